from .config import *
from .errors import *
from .numeric import *
from .parallel import *
from .progress import *
from .status import *
