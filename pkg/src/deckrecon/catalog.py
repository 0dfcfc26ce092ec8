"""Catalogs of unlabeled graphs and integer vectors over them.

A :class:`Catalog` lists the canonical representatives of all ``n``-vertex,
``m``-edge graphs, sorted by canonical code.  Representatives are stored in
canonical labeling, so a representative's bitset *is* its code.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from . import graph6
from .canon import MAX_VERTICES, canonical_code
from .graph import Graph, num_slots

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
CACHE_ENV = "DECKRECON_CACHE_DIR"


class Catalog:
    __slots__ = ("n", "m", "codes", "_index")

    def __init__(self, n: int, m: int, codes: Iterable[int]):
        self.n = n
        self.m = m
        self.codes = tuple(sorted(codes))
        self._index = {c: i for i, c in enumerate(self.codes)}
        if len(self._index) != len(self.codes):
            raise ValueError("duplicate codes in catalog")

    @property
    def N(self) -> int:
        return num_slots(self.n)

    def __len__(self):
        return len(self.codes)

    def __getitem__(self, i: int) -> Graph:
        return Graph(self.n, self.codes[i])

    def __iter__(self) -> Iterator[Graph]:
        return (Graph(self.n, c) for c in self.codes)

    def __eq__(self, other):
        if not isinstance(other, Catalog):
            return NotImplemented
        return (self.n, self.m, self.codes) == (other.n, other.m, other.codes)

    def __hash__(self):
        return hash((self.n, self.m, len(self.codes)))

    def __repr__(self):
        return f"Catalog(n={self.n}, m={self.m}, size={len(self)})"

    @property
    def reps(self) -> tuple[Graph, ...]:
        return tuple(self)

    def index_of_bits(self, bits: int) -> int:
        """Position of the class of the labeled graph ``bits``."""
        return self._index[canonical_code(self.n, bits)]

    def index_of(self, g: Graph) -> int:
        if g.n != self.n or g.edge_count != self.m:
            raise ValueError(
                f"graph with n={g.n}, m={g.edge_count} does not belong to U({self.n},{self.m})")
        return self._index[canonical_code(g.n, g.bits)]

    def graph6_lines(self) -> list[str]:
        return [graph6.encode(g) for g in self]

    def digest(self) -> str:
        h = hashlib.sha256(f"{self.n} {self.m}\n".encode())
        for line in self.graph6_lines():
            h.update(line.encode() + b"\n")
        return h.hexdigest()


def _check_params(n: int, m: int):
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"n must be in 1..{MAX_VERTICES}, got {n}")
    if not 0 <= m <= num_slots(n):
        raise ValueError(f"m must be in 0..{num_slots(n)} for n={n}, got {m}")


def masks_with_popcount(N: int, m: int) -> Iterator[int]:
    # Gosper's hack: all N-bit ints with m ones, increasing
    if m == 0:
        yield 0
        return
    x = (1 << m) - 1
    top = 1 << N
    while x < top:
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def enumerate_by_subsets(n: int, m: int) -> Catalog:
    _check_params(n, m)
    codes = {canonical_code(n, b) for b in masks_with_popcount(num_slots(n), m)}
    return Catalog(n, m, codes)


def enumerate_by_augmentation(n: int, m: int) -> Catalog:
    """Grow ``U(n, m)`` from ``U(n, m-1)`` by adding one edge in every way."""
    _check_params(n, m)
    if m == 0:
        return Catalog(n, 0, [0])
    prev = get_catalog(n, m - 1, method="augment")
    N = num_slots(n)
    codes = set()
    for c in prev.codes:
        for s in range(N):
            if not c >> s & 1:
                codes.add(canonical_code(n, c | 1 << s))
    return Catalog(n, m, codes)


def enumerate_catalog(n: int, m: int, method: str = "auto") -> Catalog:
    """All unlabeled ``n``-vertex ``m``-edge graphs.

    ``method`` is ``"subsets"`` (canonicalize every labeled edge set),
    ``"augment"`` (one-edge extension of the previous level) or ``"auto"``,
    which picks subsets for ``n <= 6``.
    """
    if method == "auto":
        method = "subsets" if n <= 6 else "augment"
    if method == "subsets":
        return enumerate_by_subsets(n, m)
    if method == "augment":
        return enumerate_by_augmentation(n, m)
    raise ValueError(f"unknown enumeration method {method!r}")


_memory: dict[tuple[int, int, str], Catalog] = {}
_cache_dir: Path | None = None


def configure_cache(cache_dir: str | os.PathLike | None):
    """Set the directory :func:`get_catalog` persists catalogs to (``None`` disables)."""
    global _cache_dir
    _cache_dir = None if cache_dir is None else Path(cache_dir)


def default_cache_dir() -> Path | None:
    env = os.environ.get(CACHE_ENV)
    if env is not None:
        return Path(env) if env else None
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "deckrecon"


def get_catalog(n: int, m: int, cache_dir: str | os.PathLike | None = None,
                method: str = "auto") -> Catalog:
    """Memoized :func:`enumerate_catalog`, backed by files when a cache directory is set."""
    _check_params(n, m)
    key = (n, m, method)
    explicit = cache_dir is not None
    cache_dir = Path(cache_dir) if explicit else _cache_dir
    stem = None if cache_dir is None else cache_dir / f"catalog-n{n}-m{m}"
    if key in _memory:
        cat = _memory[key]
        if explicit and not stem.with_suffix(".json").exists():
            _persist(cat, stem)
        return cat
    cat = None
    if stem is not None:
        if stem.with_suffix(".json").exists():
            try:
                cat = read_catalog(stem)
            except (OSError, ValueError, KeyError) as exc:
                log.warning("ignoring unreadable cached catalog %s: %s", stem, exc)
            else:
                if (cat.n, cat.m) != (n, m):
                    cat = None
    if cat is None:
        cat = enumerate_catalog(n, m, method)
        if stem is not None:
            _persist(cat, stem)
    _memory[key] = cat
    return cat


def _persist(cat, stem):
    try:
        write_catalog(cat, stem)
    except OSError as exc:
        log.warning("could not cache catalog at %s: %s", stem, exc)


def write_catalog(cat: Catalog, stem: str | os.PathLike):
    """Write ``<stem>.g6`` (catalog order) and its ``<stem>.json`` sidecar."""
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    stem.with_suffix(".g6").write_text("".join(line + "\n" for line in cat.graph6_lines()))
    meta = {"n": cat.n, "m": cat.m, "count": len(cat), "format_version": FORMAT_VERSION}
    stem.with_suffix(".json").write_text(json.dumps(meta, indent=2) + "\n")


def read_catalog(stem: str | os.PathLike) -> Catalog:
    stem = Path(stem)
    meta = json.loads(stem.with_suffix(".json").read_text())
    if meta.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported catalog format {meta.get('format_version')!r}")
    n, m = meta["n"], meta["m"]
    codes = []
    for g in graph6.read_lines(stem.with_suffix(".g6").read_text().splitlines()):
        if g.n != n or g.edge_count != m or canonical_code(n, g.bits) != g.bits:
            raise ValueError(f"{stem}.g6 holds a non-canonical or foreign graph")
        codes.append(g.bits)
    if len(codes) != meta["count"]:
        raise ValueError(f"{stem}.g6 has {len(codes)} graphs, sidecar says {meta['count']}")
    return Catalog(n, m, codes)


class DeckVector:
    """Integer vector over a catalog: a multiset of graphs, or a signed difference."""

    __slots__ = ("catalog", "counts")

    def __init__(self, catalog: Catalog, counts: Iterable[int]):
        self.catalog = catalog
        self.counts = tuple(int(c) for c in counts)
        if len(self.counts) != len(catalog):
            raise ValueError(f"vector of length {len(self.counts)} for {catalog!r}")

    @classmethod
    def zero(cls, catalog: Catalog) -> DeckVector:
        return cls(catalog, [0] * len(catalog))

    @classmethod
    def from_graphs(cls, catalog: Catalog, graphs: Iterable[Graph]) -> DeckVector:
        counts = [0] * len(catalog)
        for g in graphs:
            counts[catalog.index_of(g)] += 1
        return cls(catalog, counts)

    @classmethod
    def from_mapping(cls, catalog: Catalog, counts: Mapping[Graph, int]) -> DeckVector:
        out = [0] * len(catalog)
        for g, c in counts.items():
            out[catalog.index_of(g)] += c
        return cls(catalog, out)

    @property
    def signed(self) -> bool:
        return any(c < 0 for c in self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def is_zero(self) -> bool:
        return not any(self.counts)

    def nonzero(self) -> list[tuple[int, int]]:
        return [(i, c) for i, c in enumerate(self.counts) if c]

    def _same(self, other):
        if self.catalog != other.catalog:
            raise ValueError(f"catalog mismatch: {self.catalog!r} vs {other.catalog!r}")

    def __add__(self, other):
        self._same(other)
        return DeckVector(self.catalog, [a + b for a, b in zip(self.counts, other.counts)])

    def __sub__(self, other):
        self._same(other)
        return DeckVector(self.catalog, [a - b for a, b in zip(self.counts, other.counts)])

    def __neg__(self):
        return DeckVector(self.catalog, [-a for a in self.counts])

    def __mul__(self, k: int):
        return DeckVector(self.catalog, [k * a for a in self.counts])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DeckVector):
            return NotImplemented
        return self.catalog == other.catalog and self.counts == other.counts

    def __hash__(self):
        return hash(self.counts)

    def __repr__(self):
        terms = ", ".join(f"{graph6.encode(self.catalog[i])}:{c}" for i, c in self.nonzero())
        return f"DeckVector(n={self.catalog.n}, m={self.catalog.m}, {{{terms}}})"

    def to_json(self) -> dict:
        return {
            "n": self.catalog.n,
            "m": self.catalog.m,
            "total": self.total,
            "entries": [{"graph6": graph6.encode(self.catalog[i]), "count": c}
                        for i, c in self.nonzero()],
        }

    @classmethod
    def from_json(cls, data: dict, cache_dir=None) -> DeckVector:
        """Inverse of :meth:`to_json`; entries may use any labeling."""
        cat = get_catalog(int(data["n"]), int(data["m"]), cache_dir)
        counts = [0] * len(cat)
        for e in data["entries"]:
            g = graph6.decode(e["graph6"])
            counts[cat.index_of(g)] += int(e["count"])
        return cls(cat, counts)


def singleton(catalog: Catalog, g: Graph) -> DeckVector:
    """Characteristic vector ``X_G``."""
    counts = [0] * len(catalog)
    counts[catalog.index_of(g)] = 1
    return DeckVector(catalog, counts)


def complement_map(src: Catalog) -> tuple[Catalog, tuple[int, ...]]:
    """Catalog of complements and the index bijection ``src -> dst``."""
    dst = get_catalog(src.n, src.N - src.m)
    full = (1 << src.N) - 1
    mapping = tuple(dst.index_of_bits(c ^ full) for c in src.codes)
    return dst, mapping


def complement_vector(v: DeckVector) -> DeckVector:
    dst, mapping = complement_map(v.catalog)
    out = [0] * len(dst)
    for i, c in enumerate(v.counts):
        out[mapping[i]] += c
    return DeckVector(dst, out)


def catalog_sizes(n: int) -> list[int]:
    return [len(get_catalog(n, m)) for m in range(num_slots(n) + 1)]
