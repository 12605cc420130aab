from .chain import *
from .menu_size import *
from .optimal import *
from .posted import *
from .simplex import *
