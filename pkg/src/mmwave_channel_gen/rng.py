"""Seed-derived random streams.

Streams are keyed by integers, never by execution order, so results do not
depend on how work is scheduled.
"""

import hashlib
import struct

import numpy as np

from mmwave_channel_gen.models.channel import LinkCondition


def derive_rng(*keys: int) -> np.random.Generator:
    """Independent generator for a tuple of nonnegative integer keys."""
    return np.random.default_rng(np.random.SeedSequence([int(k) for k in keys]))


def condition_key(u: LinkCondition) -> int:
    """Stable 64-bit fingerprint of a link condition."""
    payload = struct.pack("<3d", *u.d) + u.cell_type.value.encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


def entropy_seed() -> int:
    """Fresh 32-bit seed drawn from OS entropy."""
    return int(np.random.SeedSequence().generate_state(1)[0])
