from .coverfree import *
from .instances import *
from .lowerbound import *
from .surgery import *
