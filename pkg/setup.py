"""Packaging settings."""

import os
from codecs import open
from subprocess import call

from setuptools import Command, find_packages, setup

from skelmax import __version__

# Set external files
README = open(os.path.join(os.path.dirname(__file__), 'README.md'), encoding='utf-8').read()

# allow setup.py to be run from any path
os.chdir(os.path.normpath(os.path.join(os.path.abspath(__file__), os.pardir)))


class RunTests(Command):

    """Run all tests."""
    description = 'run tests'
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        """Run all tests!"""
        errno = call(['py.test', '--cov=skelmax', '--cov-report=term-missing'])
        raise SystemExit(errno)


setup(
    name='skelmax',
    version=__version__,
    description='Weighted estimates for skeleton maximal operators: weight constants, checks and scaling fits',
    long_description=README,
    long_description_content_type='text/markdown',
    license='MIT',
    classifiers=[
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],
    keywords='cli maximal-operator weights harmonic-analysis',
    packages=find_packages(exclude=['docs', 'tests*']),
    python_requires='>=3.8',
    install_requires=[
        'docopt==0.6.2',
        'PyYAML>=5.4',
        'jinja2>=2.11',
        'numpy>=1.20',
    ],
    extras_require={
        'test': ['coverage', 'pytest', 'pytest-cov', 'hypothesis'],
    },
    include_package_data=True,
    entry_points={
        'console_scripts': [
            'skelmax=skelmax.cli:main',
        ],
    },
    cmdclass={'test': RunTests},
)
