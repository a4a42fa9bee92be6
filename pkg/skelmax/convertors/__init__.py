from .convertor import ConfigStage, Convertor
