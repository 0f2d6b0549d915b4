"""Seeded random rational points that stay away from every kernel pole."""
from __future__ import annotations

import random

from .field import exact, mpq

NUM_RANGE = (-20, 20)
DEN_RANGE = (1, 10)


class RationalSampler:
    """Draws rationals p/q with p in [-20, 20], q in [1, 10].

    Any new point is rejected if its difference with an earlier point lies in
    {0, +-c, +-2c}.
    """

    def __init__(self, seed=0, c=1, max_tries: int = 10000):
        self.rng = random.Random(seed)
        self.c = exact(c)
        self.max_tries = max_tries

    def rational(self):
        p = self.rng.randint(*NUM_RANGE)
        q = self.rng.randint(*DEN_RANGE)
        return mpq(p, q)

    def ok(self, x, taken) -> bool:
        c = self.c
        bad = (0, c, -c, 2 * c, -2 * c)
        return all((x - y) not in bad for y in taken)

    def points(self, n: int, taken=()) -> list:
        """``n`` fresh points generic with respect to each other and ``taken``."""
        pool = list(taken)
        out = []
        for _ in range(n):
            for _ in range(self.max_tries):
                x = self.rational()
                if self.ok(x, pool):
                    break
            else:
                raise RuntimeError("could not place a generic point; widen the sampling range")
            pool.append(x)
            out.append(x)
        return out

    def sets(self, *sizes, taken=()) -> list:
        """Several mutually generic sets, returned as tuples."""
        flat = self.points(sum(sizes), taken)
        out, i = [], 0
        for s in sizes:
            out.append(tuple(flat[i:i + s]))
            i += s
        return out

    def nonzero(self):
        while True:
            x = self.rational()
            if x != 0:
                return x
