from .loss_functions import LossFunctions
