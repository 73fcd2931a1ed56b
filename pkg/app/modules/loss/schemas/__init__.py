from .loss_spec import LossSpec
