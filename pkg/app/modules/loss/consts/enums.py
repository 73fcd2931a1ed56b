from typing import Type

from app.common.consts.enums import StringEnum


class LossFamily(StringEnum):
    """Loss families; values are the config strings."""

    OWA = "owa"
    POLY = "poly"
    LOG = "log"
    EXP = "exp"
    BPR_PAIR = "bpr"
    BPR_BATCH = "bbpr"
    CROSS_ENTROPY = "ce"


RANK_SENSITIVE_FAMILIES = frozenset({LossFamily.POLY, LossFamily.LOG, LossFamily.EXP})


class LossEnums:
    """
    Container of enums used across the loss module.
    """

    Family: Type[LossFamily] = LossFamily
