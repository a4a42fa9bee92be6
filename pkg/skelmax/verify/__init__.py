"""Numerical checks of the skeleton maximal inequalities and their scaling"""
