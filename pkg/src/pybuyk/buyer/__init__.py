from .adaptive import *
from .best_response import *
from .ic import *
from .revenue import *
