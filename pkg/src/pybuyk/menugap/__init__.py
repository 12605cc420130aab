from .certificates import *
from .gap import *
from .sequences import *
