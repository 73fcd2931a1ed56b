import numpy as np

from app.common.contracts import IRandomStreams


class RandomStreams(IRandomStreams):
    """
    Seeded numpy generators; child streams come from SeedSequence.spawn so
    parallel workers never share a stream.
    """

    def __init__(self, seed: int):
        self._sequence = np.random.SeedSequence(seed)

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self._sequence)

    def spawn(self, n: int) -> list[np.random.Generator]:
        return [np.random.default_rng(child) for child in self._sequence.spawn(n)]
