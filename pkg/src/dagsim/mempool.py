"""Dual-indexed mempool: hash lookup by id plus fee-ordered access.

The greedy policy needs the fee order, the random policy needs O(1) uniform
sampling, and block arrivals need cheap removal by id. A dict carries the
id index, a plain list (with swap-remove) carries the sampling index, and a
lazily-built, lazily-cleaned heap carries the fee order. The heap only
exists once fee-ordered access is first requested, so mempools of miners
that never select greedily (the common case) pay nothing for it; stale heap
entries are skipped on access and flushed by periodic rebuilds, keeping
every operation O(log n) amortized.

Transaction ids must never be re-added once removed (ids are unique within a
simulation run), which is what makes the lazy heap correct.
"""

from __future__ import annotations

import heapq

__all__ = ["Mempool"]

_MIN_REBUILD = 64


class Mempool:
    __slots__ = ("_fees", "_ids", "_pos", "_heap", "_stale")

    def __init__(self) -> None:
        self._fees: dict[int, float] = {}
        self._ids: list[int] = []
        self._pos: dict[int, int] = {}
        self._heap: list[tuple[float, int]] | None = None
        self._stale = 0

    def __len__(self) -> int:
        return len(self._fees)

    def __contains__(self, tx_id: int) -> bool:
        return tx_id in self._fees

    def fee_of(self, tx_id: int) -> float:
        return self._fees[tx_id]

    def add(self, tx_id: int, fee: float) -> None:
        if tx_id in self._fees:
            raise ValueError(f"transaction {tx_id} already in mempool")
        self._fees[tx_id] = fee
        self._pos[tx_id] = len(self._ids)
        self._ids.append(tx_id)
        if self._heap is not None:
            heapq.heappush(self._heap, (-fee, tx_id))

    def add_many(self, pairs) -> None:
        """Bulk ``add`` of (tx_id, fee) pairs."""
        fees = self._fees
        ids = self._ids
        pos = self._pos
        heap = self._heap
        for tx_id, fee in pairs:
            if tx_id in fees:
                raise ValueError(f"transaction {tx_id} already in mempool")
            fees[tx_id] = fee
            pos[tx_id] = len(ids)
            ids.append(tx_id)
            if heap is not None:
                heapq.heappush(heap, (-fee, tx_id))

    def discard(self, tx_id: int) -> bool:
        """Remove ``tx_id`` if present; returns whether anything was removed."""
        pos = self._pos.pop(tx_id, None)
        if pos is None:
            return False
        del self._fees[tx_id]
        ids = self._ids
        last = ids.pop()
        if last != tx_id:
            ids[pos] = last
            self._pos[last] = pos
        if self._heap is not None:
            self._stale += 1
            if self._stale > _MIN_REBUILD and self._stale > len(self._fees):
                self._rebuild()
        return True

    def discard_many(self, tx_ids) -> int:
        """Bulk ``discard``; returns how many ids were actually removed."""
        fees = self._fees
        ids = self._ids
        pos_map = self._pos
        removed = 0
        for tx_id in tx_ids:
            pos = pos_map.pop(tx_id, None)
            if pos is None:
                continue
            del fees[tx_id]
            last = ids.pop()
            if last != tx_id:
                ids[pos] = last
                pos_map[last] = pos
            removed += 1
        if removed and self._heap is not None:
            self._stale += removed
            if self._stale > _MIN_REBUILD and self._stale > len(fees):
                self._rebuild()
        return removed

    def top(self, k: int) -> list[int]:
        """The ``k`` highest-fee ids, fee descending, ties by ascending id."""
        if k <= 0:
            return []
        if self._heap is None:
            self._rebuild()
        fees = self._fees
        heap = self._heap
        taken: list[tuple[float, int]] = []
        out: list[int] = []
        while heap and len(out) < k:
            entry = heapq.heappop(heap)
            if entry[1] in fees:
                taken.append(entry)
                out.append(entry[1])
            else:
                self._stale -= 1
        for entry in taken:
            heapq.heappush(heap, entry)
        return out

    def sample(self, k: int, rng) -> list[int]:
        """Uniform sample of ``k`` distinct ids (all of them if ``k`` >= size)."""
        if k <= 0:
            return []
        if k >= len(self._ids):
            return list(self._ids)
        return rng.sample(self._ids, k)

    def sample_excluding(self, exclude: list[int], k: int, rng) -> list[int]:
        """Uniform sample of ``k`` distinct ids outside ``exclude``.

        ``exclude`` entries must be live ids (as returned by ``top``).
        """
        if k <= 0:
            return []
        if not exclude:
            return self.sample(k, rng)
        excluded = set(exclude)
        available = len(self._ids) - len(excluded)
        if k >= available:
            return [i for i in self._ids if i not in excluded]
        ids = self._ids
        n = len(ids)
        chosen: list[int] = []
        chosen_set: set[int] = set()
        # rejection sampling; k < available guarantees termination
        while len(chosen) < k:
            candidate = ids[rng.randrange(n)]
            if candidate in excluded or candidate in chosen_set:
                continue
            chosen_set.add(candidate)
            chosen.append(candidate)
        return chosen

    def iter_by_fee(self):
        """All live ids ordered by fee descending then id ascending (fresh copy)."""
        for _, tx_id in sorted((-f, i) for i, f in self._fees.items()):
            yield tx_id

    def _rebuild(self) -> None:
        self._heap = [(-f, i) for i, f in self._fees.items()]
        heapq.heapify(self._heap)
        self._stale = 0
