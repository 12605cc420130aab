from .backend import *
from .map_reduce import *
