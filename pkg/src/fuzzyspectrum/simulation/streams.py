"""Independent random streams per replication (common random numbers).

Every source of randomness gets its own generator spawned from one
``SeedSequence``: topology, call arrivals, each channel's primary process and
each user's mobility. Draws from a stream happen in an order fixed by that
stream's own events, never by admission decisions, so the FLS and NSU runs of
one seed see identical traffic, holding times, primary activity and motion.
"""

from __future__ import annotations

from typing import List

import numpy as np


class ReplicationStreams:
    """Generators for one replication seed.

    Args:
        seed: Replication seed.
        num_channels: Number of per-channel primary streams.
        num_users: Number of per-user mobility streams.
    """

    def __init__(self, seed: int, num_channels: int, num_users: int) -> None:
        root = np.random.SeedSequence(seed)
        topology, arrivals, primary, mobility = root.spawn(4)
        self.seed = seed
        self.topology = np.random.default_rng(topology)
        self.arrivals = np.random.default_rng(arrivals)
        self.primary: List[np.random.Generator] = [
            np.random.default_rng(s) for s in primary.spawn(num_channels)
        ]
        self.mobility: List[np.random.Generator] = [
            np.random.default_rng(s) for s in mobility.spawn(num_users)
        ]
