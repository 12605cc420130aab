from .lot import *
from .types import *
from .validation import *
