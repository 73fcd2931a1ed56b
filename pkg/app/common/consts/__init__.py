from .enums import *
from .error_codes import *
