"""Counter-addressed random streams for reproducible, chunk-invariant Monte Carlo.

Each :class:`RngStream` is a Philox4x64 key derived from ``(master_seed,
stream_index)`` through :class:`numpy.random.SeedSequence`. Because Philox is
counter based, any position in the stream can be reached in O(1), so a run of
``n`` trials can be cut into arbitrary chunks and the union of the chunks sees
exactly the numbers a single sequential pass would.
"""
from __future__ import annotations

import numpy as np

GENERATOR_ID = (
    f"numpy.random.Philox4x64 (numpy {np.__version__}); "
    "key = SeedSequence(master_seed, spawn_key=(stream_index,)); "
    "trial t reads uniforms [t*k, (t+1)*k) for a model drawing k per trial"
)

_WORDS_PER_BLOCK = 4
_U64_MAX = 2**64 - 1


class RngStream:
    """Deterministic stream addressed by ``(master_seed, stream_index)``.

    Identical pairs give identical sequences; distinct indices give
    independent keys. :meth:`random` draws sequentially, :meth:`at` opens an
    independent view starting at an absolute uniform offset.
    """

    def __init__(self, master_seed: int, stream_index: int = 0):
        for name, v in (("master_seed", master_seed), ("stream_index", stream_index)):
            if not 0 <= int(v) <= _U64_MAX:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")
        self.master_seed = int(master_seed)
        self.stream_index = int(stream_index)
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        self._key = seq.generate_state(2, np.uint64)
        self._cursor = 0

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed}, stream_index={self.stream_index})"

    def at(self, offset: int) -> np.random.Generator:
        """A generator whose next ``random()`` is uniform number ``offset`` of this stream."""
        block, skip = divmod(int(offset), _WORDS_PER_BLOCK)
        gen = np.random.Generator(np.random.Philox(key=self._key, counter=block))
        if skip:
            gen.random(skip)
        return gen

    def random(self, size=None):
        """Sequential uniforms in [0, 1); advances this stream's cursor."""
        count = 1 if size is None else int(np.prod(size))
        out = self.at(self._cursor).random(count)
        self._cursor += count
        return float(out[0]) if size is None else out.reshape(size)

    def substream(self, tag: int) -> "RngStream":
        """A child stream keyed by ``(master_seed, stream_index, tag)``."""
        child = RngStream.__new__(RngStream)
        child.master_seed = self.master_seed
        child.stream_index = self.stream_index
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index, int(tag)))
        child._key = seq.generate_state(2, np.uint64)
        child._cursor = 0
        return child
