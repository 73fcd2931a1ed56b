from .loss_functions import ILossFunctions
