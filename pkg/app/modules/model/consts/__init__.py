from .enums import *
