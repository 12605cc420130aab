from .report import *
