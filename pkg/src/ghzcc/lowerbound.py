"""Impossibility of two-bit classical protocols for the length-3 promise game.

Two independent routes to the same fact:

* replay of the seven named elimination cases ("1", "2.1.1".."2.1.4",
  "2.2.1", "2.2.2"), each a pair of receiver inputs whose answer-value
  constraints on the third party's one-bit partition are jointly
  2-coloring-infeasible, plus a coverage check mapping all 128 normalized
  broadcast partitions onto those cases under bit-position symmetry;

* exhaustive searches over the deterministic protocol spaces (broadcast +
  response, full adaptive two-bit blackboard, and the two-party spaces for
  the imported inner-product/parity facts), packed as bitmask fibers so the
  whole space is decided exactly at desk scale.

Length-3 words are handled as ints 0..7 whose binary digits read position 1
first ("011" <-> 3); the constraint z = x XOR y XOR 111 and the target
f = XOR_i (x_i AND y_i AND z_i) are bitwise, so the packing is free.
"""

from __future__ import annotations

import itertools
import multiprocessing
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .bitcore import BitString, FunctionTable, PromiseTriple, f_ghz, inner_product_table

ALL3 = 7  # all-ones word of length 3
_PERMS = tuple(itertools.permutations((0, 1, 2)))


def _as_value(v) -> int:
    """Accept an int 0..7, a '010'-style string, or a length-3 BitString."""
    if isinstance(v, BitString):
        if v.length != 3:
            raise ValueError(f"need length 3, got {v.length}")
        return v.index
    if isinstance(v, str):
        if len(v) != 3 or set(v) - {"0", "1"}:
            raise ValueError(f"not a 3-bit string: {v!r}")
        return int(v, 2)
    if isinstance(v, int) and 0 <= v <= 7:
        return v
    raise ValueError(f"not a 3-bit word: {v!r}")


def _s(v: int) -> str:
    return format(v, "03b")


def third_word(x: int, y: int) -> int:
    """The unique z completing (x, y) to a promise triple."""
    return x ^ y ^ ALL3


def f3(x: int, y: int) -> int:
    """Game value of the promise triple determined by (x, y)."""
    z = third_word(x, y)
    return (x & y & z).bit_count() & 1


def _permute_val(v: int, perm: tuple[int, int, int]) -> int:
    s = _s(v)
    return int("".join(s[perm[i]] for i in range(3)), 2)


def _permute_set(values: Iterable[int], perm: tuple[int, int, int]) -> frozenset[int]:
    return frozenset(_permute_val(v, perm) for v in values)


# ---------------------------------------------------------------------------
# Broadcast partitions and the constraint-graph (2-coloring) route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionOfCube:
    """Bob's one-bit broadcast as a subset mask: bit y set means phi(y) = 1.

    Normalized so that 000 lands in class 0.
    """

    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= 255:
            raise ValueError(f"mask {self.mask} outside 0..255")
        if self.mask & 1:
            raise ValueError("normalization requires 000 in class 0")

    def phi(self, y: int) -> int:
        return (self.mask >> y) & 1

    @property
    def class0(self) -> frozenset[int]:
        return frozenset(y for y in range(8) if not self.phi(y))

    @property
    def class1(self) -> frozenset[int]:
        return frozenset(y for y in range(8) if self.phi(y))

    def side(self, b: int) -> frozenset[int]:
        return self.class1 if b else self.class0

    def __str__(self) -> str:
        return "S0={%s} S1={%s}" % (
            ",".join(_s(v) for v in sorted(self.class0)),
            ",".join(_s(v) for v in sorted(self.class1)),
        )


def enumerate_partitions() -> Iterator[PartitionOfCube]:
    """All 128 normalized broadcast partitions."""
    for mask in range(0, 256, 2):
        yield PartitionOfCube(mask)


@dataclass(frozen=True)
class TogetherApartConstraints:
    """What a correct one-bit split of z-space is forced to do.

    apart: z pairs whose answer values differ for some receiver input, so
    they can never share a class. together: pairs forced into the same class
    by chains of apart constraints (2 classes only). feasible: the apart
    graph is 2-colorable.
    """

    apart: tuple[tuple[str, str], ...]
    together: tuple[tuple[str, str], ...]
    feasible: bool


@dataclass(frozen=True)
class CarolFeasibility:
    x_values: tuple[str, ...]
    bob_class: tuple[str, ...]
    candidates: Mapping[str, tuple[tuple[str, str, int], ...]]
    per_x: Mapping[str, TogetherApartConstraints]
    joint: TogetherApartConstraints

    @property
    def feasible(self) -> bool:
        return self.joint.feasible


def _two_color(edges: set[tuple[int, int]]) -> TogetherApartConstraints:
    """2-color the apart graph; derive forced together/apart pairs per component."""
    nodes = sorted({v for e in edges for v in e})
    adj: dict[int, set[int]] = {v: set() for v in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    color: dict[int, int] = {}
    feasible = True
    components: list[list[int]] = []
    for start in nodes:
        if start in color:
            continue
        comp = [start]
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = color[u] ^ 1
                    comp.append(w)
                    queue.append(w)
                elif color[w] == color[u]:
                    feasible = False
        components.append(sorted(comp))
    together = []
    apart = []
    for comp in components:
        for u, v in itertools.combinations(comp, 2):
            if color[u] == color[v]:
                together.append((_s(u), _s(v)))
            else:
                apart.append((_s(u), _s(v)))
    return TogetherApartConstraints(tuple(sorted(apart)), tuple(sorted(together)), feasible)


def carol_partition_feasible(xs, bob_class) -> CarolFeasibility:
    """Constraints Carol's one-bit partition must satisfy, and whether any exists.

    For each receiver input x, the consistent completions are (y, z) with y
    in Bob's announced class and z forced by the promise; a one-bit split of
    z works for x exactly when the answer value is constant inside each
    class. Pairs with different answers must therefore be split, which is a
    graph 2-coloring problem; joint feasibility merges the graphs of all
    supplied x values.
    """
    if isinstance(xs, (int, str, BitString)):
        xs = [xs]
    x_vals = [_as_value(x) for x in xs]
    class_vals = sorted({_as_value(y) for y in bob_class})
    candidates: dict[str, tuple[tuple[str, str, int], ...]] = {}
    per_x: dict[str, TogetherApartConstraints] = {}
    joint_edges: set[tuple[int, int]] = set()
    for x in x_vals:
        cands = [(y, third_word(x, y), f3(x, y)) for y in class_vals]
        candidates[_s(x)] = tuple((_s(y), _s(z), f) for y, z, f in cands)
        edges = {
            (min(z1, z2), max(z1, z2))
            for (_, z1, f1), (_, z2, f2) in itertools.combinations(cands, 2)
            if f1 != f2
        }
        per_x[_s(x)] = _two_color(edges)
        joint_edges |= edges
    return CarolFeasibility(
        x_values=tuple(_s(x) for x in x_vals),
        bob_class=tuple(_s(y) for y in class_vals),
        candidates=candidates,
        per_x=per_x,
        joint=_two_color(joint_edges),
    )


# ---------------------------------------------------------------------------
# The seven named elimination cases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CaseProbe:
    x: str
    tuples: tuple[tuple[str, str, str], ...]
    f_values: tuple[int, ...]


@dataclass(frozen=True)
class CaseWitness:
    case_id: str
    header: str
    class_side: int  # which broadcast class the witness inputs sit in
    class_members: tuple[str, ...]
    probes: tuple[CaseProbe, ...]


CASES: dict[str, CaseWitness] = {
    w.case_id: w
    for w in (
        CaseWitness(
            "1",
            "class 0 has at most 2 elements",
            class_side=1,
            class_members=("001", "010", "011"),
            probes=(
                CaseProbe(
                    "001",
                    (("001", "001", "111"), ("001", "010", "100"), ("001", "011", "101")),
                    (1, 0, 1),
                ),
                CaseProbe(
                    "011",
                    (("011", "001", "101"), ("011", "010", "110"), ("011", "011", "111")),
                    (1, 1, 0),
                ),
            ),
        ),
        CaseWitness(
            "2.1.1",
            "000, 001, 010 in class 0",
            class_side=0,
            class_members=("000", "001", "010"),
            probes=(
                CaseProbe(
                    "001",
                    (("001", "000", "110"), ("001", "001", "111"), ("001", "010", "100")),
                    (0, 1, 0),
                ),
                CaseProbe(
                    "011",
                    (("011", "000", "100"), ("011", "001", "101"), ("011", "010", "110")),
                    (0, 1, 1),
                ),
            ),
        ),
        CaseWitness(
            "2.1.2",
            "000, 001, 011 in class 0",
            class_side=0,
            class_members=("000", "001", "011"),
            probes=(
                CaseProbe(
                    "001",
                    (("001", "000", "110"), ("001", "001", "111"), ("001", "011", "101")),
                    (0, 1, 1),
                ),
                CaseProbe(
                    "011",
                    (("011", "000", "100"), ("011", "001", "101"), ("011", "011", "111")),
                    (0, 1, 0),
                ),
            ),
        ),
        CaseWitness(
            "2.1.3",
            "000, 001, 110 in class 0",
            class_side=0,
            class_members=("000", "001", "110"),
            probes=(
                CaseProbe(
                    "010",
                    (("010", "000", "101"), ("010", "001", "100"), ("010", "110", "011")),
                    (0, 0, 1),
                ),
                CaseProbe(
                    "011",
                    (("011", "000", "100"), ("011", "001", "101"), ("011", "110", "010")),
                    (0, 1, 1),
                ),
            ),
        ),
        CaseWitness(
            "2.1.4",
            "000, 001, 111 in class 0",
            class_side=0,
            class_members=("000", "001", "111"),
            probes=(
                CaseProbe(
                    "010",
                    (("010", "000", "101"), ("010", "001", "100"), ("010", "111", "010")),
                    (0, 0, 1),
                ),
                CaseProbe(
                    "011",
                    (("011", "000", "100"), ("011", "001", "101"), ("011", "111", "011")),
                    (0, 1, 0),
                ),
            ),
        ),
        CaseWitness(
            "2.2.1",
            "class 0 of size >= 3, no weight-1 element, 111 not in it",
            class_side=1,
            class_members=("001", "010", "100", "111"),
            probes=(
                CaseProbe(
                    "001",
                    (
                        ("001", "001", "111"),
                        ("001", "010", "100"),
                        ("001", "100", "010"),
                        ("001", "111", "001"),
                    ),
                    (1, 0, 0, 1),
                ),
                CaseProbe(
                    "010",
                    (
                        ("010", "001", "100"),
                        ("010", "010", "111"),
                        ("010", "100", "001"),
                        ("010", "111", "010"),
                    ),
                    (0, 1, 0, 1),
                ),
            ),
        ),
        CaseWitness(
            "2.2.2",
            "class 0 of size >= 3, no weight-1 element, 111 in it",
            class_side=0,
            class_members=("000", "011", "111"),
            probes=(
                CaseProbe(
                    "010",
                    (("010", "000", "101"), ("010", "011", "110"), ("010", "111", "010")),
                    (0, 1, 1),
                ),
                CaseProbe(
                    "110",
                    (("110", "000", "001"), ("110", "011", "010"), ("110", "111", "110")),
                    (0, 1, 0),
                ),
            ),
        ),
    )
}


@dataclass(frozen=True)
class CaseReport:
    case_id: str
    header: str
    tuple_checks: tuple[tuple[str, int, int, bool], ...]  # ((x,y,z), expected, got, ok)
    feasibility: CarolFeasibility
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def replay_case(case_id: str) -> CaseReport:
    """Re-derive one elimination case's witness values and its infeasibility.

    Every listed (x, y, z) must satisfy the promise, its game value must be
    re-derivable (both through the triple evaluation and the packed form),
    and the two receiver inputs' constraints must be jointly 2-coloring
    infeasible.
    """
    try:
        witness = CASES[case_id]
    except KeyError:
        raise ValueError(f"unknown case id {case_id!r}; know {sorted(CASES)}") from None
    failures: list[str] = []
    tuple_checks: list[tuple[str, int, int, bool]] = []
    members = set(witness.class_members)
    for probe in witness.probes:
        if len(probe.tuples) != len(probe.f_values):
            failures.append(f"x={probe.x}: {len(probe.tuples)} tuples, "
                            f"{len(probe.f_values)} listed values")
        listed_ys = []
        for (tx, ty, tz), expected in zip(probe.tuples, probe.f_values):
            label = f"({tx},{ty},{tz})"
            if tx != probe.x:
                failures.append(f"{label}: receiver input differs from probe x={probe.x}")
            if ty not in members:
                failures.append(f"{label}: y outside the case's class")
            listed_ys.append(ty)
            try:
                triple = PromiseTriple.from_strs(tx, ty, tz)
            except Exception as exc:  # promise violation
                failures.append(f"{label}: {exc}")
                tuple_checks.append((label, expected, -1, False))
                continue
            got = f_ghz(triple)
            packed = f3(_as_value(tx), _as_value(ty))
            ok = got == expected == packed
            if not ok:
                failures.append(
                    f"{label}: listed value {expected}, re-derived {got} (packed {packed})"
                )
            tuple_checks.append((label, expected, got, ok))
        if sorted(listed_ys) != sorted(members):
            failures.append(
                f"x={probe.x}: probes cover y={sorted(listed_ys)}, "
                f"class is {sorted(members)}"
            )
    feas = carol_partition_feasible([p.x for p in witness.probes], witness.class_members)
    for x, constraints in feas.per_x.items():
        if not constraints.feasible:
            failures.append(f"x={x} alone is already infeasible; witness malformed")
    if feas.feasible:
        failures.append("joint constraints are 2-colorable; case does not eliminate")
    return CaseReport(case_id, witness.header, tuple(tuple_checks), feas, tuple(failures))


@dataclass(frozen=True)
class CoverageAssignment:
    partition: PartitionOfCube
    case_id: str
    perm: tuple[int, int, int]
    verified: bool


@dataclass(frozen=True)
class CoverageReport:
    total: int
    assignments: tuple[CoverageAssignment, ...]
    unmapped: tuple[PartitionOfCube, ...]
    counts: Mapping[str, int]

    @property
    def passed(self) -> bool:
        return not self.unmapped and all(a.verified for a in self.assignments)


def _classify_partition(s0: frozenset[int]) -> tuple[str, tuple[int, int, int]] | None:
    avoid = {0b001, 0b010, 0b011}
    if len(s0) <= 2:
        for perm in _PERMS:
            if not (_permute_set(s0, perm) & avoid):
                return "1", perm
        return None
    if any(v.bit_count() == 1 for v in s0):
        for case_id, third in (("2.1.1", 0b010), ("2.1.2", 0b011),
                               ("2.1.3", 0b110), ("2.1.4", 0b111)):
            for perm in _PERMS:
                if {0b000, 0b001, third} <= _permute_set(s0, perm):
                    return case_id, perm
        return None
    if 0b111 not in s0:
        return "2.2.1", _PERMS[0]
    for perm in _PERMS:
        if 0b011 in _permute_set(s0, perm):
            return "2.2.2", perm
    return None


def case_cover_check() -> CoverageReport:
    """Map all 128 normalized partitions onto the seven cases.

    The symmetry action permutes the three bit positions of every word
    simultaneously, which preserves the promise and the game value. Each
    assignment is verified: the case's witness class must sit inside the
    permuted image of the matching broadcast class.
    """
    assignments: list[CoverageAssignment] = []
    unmapped: list[PartitionOfCube] = []
    counts: dict[str, int] = {case_id: 0 for case_id in CASES}
    for partition in enumerate_partitions():
        result = _classify_partition(partition.class0)
        if result is None:
            unmapped.append(partition)
            continue
        case_id, perm = result
        witness = CASES[case_id]
        image = _permute_set(partition.side(witness.class_side), perm)
        verified = {_as_value(m) for m in witness.class_members} <= image
        assignments.append(CoverageAssignment(partition, case_id, perm, verified))
        counts[case_id] += 1
    return CoverageReport(128, tuple(assignments), tuple(unmapped), counts)


# ---------------------------------------------------------------------------
# Exhaustive searches (bitmask-packed fibers)
# ---------------------------------------------------------------------------

# Row masks over y of the game value for each receiver input x.
_F_ROW = tuple(
    sum(f3(x, y) << y for y in range(8)) for x in range(8)
)


def _const_on(sub: int, x: int) -> bool:
    """Is the game value constant over the y-subset `sub` for receiver input x?"""
    hits = sub & _F_ROW[x]
    return hits == 0 or hits == sub


_TABLES: dict | None = None


def _tables() -> dict:
    """Pullback and valid-message tables, built once per process.

    pull[x][zmask] is the y-subset whose forced z lands in zmask.
    valid_y[x][s] / valid_z[x][s] are 256-bit bitmaps: bit m is set when the
    one-bit message function with mask m (over y, resp. over z) splits the
    y-subset s into two answer-constant fibers for receiver input x.
    """
    global _TABLES
    if _TABLES is not None:
        return _TABLES
    pull = [[0] * 256 for _ in range(8)]
    for x in range(8):
        t = x ^ ALL3
        for zmask in range(256):
            m = 0
            rest = zmask
            while rest:
                z = (rest & -rest).bit_length() - 1
                m |= 1 << (z ^ t)
                rest &= rest - 1
            pull[x][zmask] = m
    const = [[_const_on(sub, x) for sub in range(256)] for x in range(8)]
    valid_y = [[0] * 256 for _ in range(8)]
    valid_z = [[0] * 256 for _ in range(8)]
    for x in range(8):
        cx = const[x]
        px = pull[x]
        vy = valid_y[x]
        vz = valid_z[x]
        for s in range(256):
            acc_y = 0
            acc_z = 0
            for m in range(256):
                if cx[s & m] and cx[s & ~m & 255]:
                    acc_y |= 1 << m
                pm = px[m]
                if cx[s & pm] and cx[s & ~pm & 255]:
                    acc_z |= 1 << m
            vy[s] = acc_y
            vz[s] = acc_z
    _TABLES = {"pull": pull, "valid_y": valid_y, "valid_z": valid_z}
    return _TABLES


_FULL_BITMAP = (1 << 256) - 1


@dataclass(frozen=True)
class SearchResult:
    name: str
    feasible: int
    candidates: int
    elapsed_s: float
    workers: int
    breakdown: Mapping[tuple[str, str, str], int] | None = None


def carol_response_count(y_class: Iterable[int]) -> int:
    """How many one-bit z-message functions serve a fixed broadcast class.

    Counts masks m over z such that, for every receiver input x, the game
    value is constant on both fibers of the class under z -> m-bit. This is
    the enumeration-side counterpart of the 2-coloring feasibility check.
    """
    tables = _tables()
    class_mask = 0
    for y in y_class:
        class_mask |= 1 << _as_value(y)
    bitmap = _FULL_BITMAP
    for x in range(8):
        bitmap &= tables["valid_z"][x][class_mask]
        if not bitmap:
            break
    return bitmap.bit_count()


def _broadcast_range(bounds: tuple[int, int]) -> int:
    lo, hi = bounds
    tables = _tables()
    valid_z = tables["valid_z"]
    side_count: dict[int, int] = {}

    def n_side(class_mask: int) -> int:
        cached = side_count.get(class_mask)
        if cached is None:
            bitmap = _FULL_BITMAP
            for x in range(8):
                bitmap &= valid_z[x][class_mask]
            cached = bitmap.bit_count()
            side_count[class_mask] = cached
        return cached

    feasible = 0
    for phi in range(lo, hi):
        feasible += n_side(~phi & 255) * n_side(phi)
    return feasible


def search_bob_broadcast_carol(workers: int = 1) -> SearchResult:
    """Count correct (broadcast, response) pairs: 256 phi x 65536 psi.

    Bob broadcasts phi(y); Carol answers psi(z, broadcast bit). A pair is
    correct when for every receiver input and transcript the game value is
    constant over the consistent completions. The two psi halves act on
    disjoint transcripts, so the count for a fixed phi is the product of the
    per-class response counts.
    """
    start = time.perf_counter()
    chunks = _split_range(256, workers)
    if workers > 1 and len(chunks) > 1:
        _tables()  # build before forking so children inherit
        with multiprocessing.Pool(workers) as pool:
            feasible = sum(pool.map(_broadcast_range, chunks))
    else:
        feasible = sum(_broadcast_range(c) for c in chunks)
    return SearchResult(
        name="bob_broadcast_carol",
        feasible=feasible,
        candidates=256 * 65536,
        elapsed_s=time.perf_counter() - start,
        workers=workers,
    )


_SPEAKERS = ("A", "B", "C")


def _class_masks_by_x(speaker: str, fn_mask: int, bit: int, pull) -> tuple[int, ...]:
    """Per-x y-subsets consistent with `speaker` announcing `bit` via fn_mask."""
    if speaker == "A":
        return tuple(255 if ((fn_mask >> x) & 1) == bit else 0 for x in range(8))
    if speaker == "B":
        mask = fn_mask if bit else ~fn_mask & 255
        return (mask,) * 8
    zmask = fn_mask if bit else ~fn_mask & 255
    return tuple(pull[x][zmask] for x in range(8))


def _second_bit_counts(ys: tuple[int, ...], tables) -> tuple[int, int, int]:
    """Valid second-message counts (speaker A, B, C) given per-x consistent sets."""
    n_a = 256 if all(_const_on(ys[x], x) for x in range(8)) else 0
    bitmap_b = _FULL_BITMAP
    bitmap_c = _FULL_BITMAP
    valid_y = tables["valid_y"]
    valid_z = tables["valid_z"]
    for x in range(8):
        bitmap_b &= valid_y[x][ys[x]]
        bitmap_c &= valid_z[x][ys[x]]
    return n_a, bitmap_b.bit_count(), bitmap_c.bit_count()


def _blackboard_range(bounds: tuple[int, int]) -> tuple[int, dict]:
    lo, hi = bounds
    tables = _tables()
    pull = tables["pull"]
    memo: dict[tuple[int, ...], tuple[int, int, int]] = {}

    def counts_for(ys: tuple[int, ...]) -> tuple[int, int, int]:
        cached = memo.get(ys)
        if cached is None:
            cached = _second_bit_counts(ys, tables)
            memo[ys] = cached
        return cached

    feasible = 0
    breakdown: dict[tuple[str, str, str], int] = {}
    for flat in range(lo, hi):
        sp1 = _SPEAKERS[flat >> 8]
        m1 = flat & 255
        counts0 = counts_for(_class_masks_by_x(sp1, m1, 0, pull))
        counts1 = counts_for(_class_masks_by_x(sp1, m1, 1, pull))
        for i0, sp2_0 in enumerate(_SPEAKERS):
            if not counts0[i0]:
                continue
            for i1, sp2_1 in enumerate(_SPEAKERS):
                product = counts0[i0] * counts1[i1]
                if product:
                    key = (sp1, sp2_0, sp2_1)
                    breakdown[key] = breakdown.get(key, 0) + product
        feasible += sum(counts0) * sum(counts1)
    return feasible, breakdown


def search_blackboard_two_bit(workers: int = 1) -> SearchResult:
    """Count correct protocols in the full adaptive two-bit blackboard model.

    Any party may write the first bit (a function of its own word); the
    second writer and its function may depend on the first bit's value; the
    receiver outputs from her word plus both public bits. This model
    subsumes every two-bit point-to-point pattern, so a zero count retires
    them all at once. The breakdown reports the count per
    (first speaker, second speaker if 0, second speaker if 1) pattern.
    """
    start = time.perf_counter()
    chunks = _split_range(3 * 256, workers)
    if workers > 1 and len(chunks) > 1:
        _tables()
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_blackboard_range, chunks)
    else:
        parts = [_blackboard_range(c) for c in chunks]
    feasible = sum(p[0] for p in parts)
    breakdown: dict[tuple[str, str, str], int] = {
        (a, b, c): 0 for a in _SPEAKERS for b in _SPEAKERS for c in _SPEAKERS
    }
    for _, part_breakdown in parts:
        for key, count in part_breakdown.items():
            breakdown[key] += count
    per_branch = 3 * 256
    return SearchResult(
        name="blackboard_two_bit",
        feasible=feasible,
        candidates=per_branch * per_branch * per_branch,
        elapsed_s=time.perf_counter() - start,
        workers=workers,
        breakdown=breakdown,
    )


def _split_range(size: int, workers: int) -> list[tuple[int, int]]:
    chunks = max(1, min(workers, size))
    step = -(-size // chunks)
    return [(lo, min(lo + step, size)) for lo in range(0, size, step)]


@dataclass(frozen=True)
class ProtocolCandidate:
    """One explicit two-bit blackboard protocol, for spot checks against the search.

    first_fn and the second_fns are subset masks over the respective
    speaker's 3-bit word (bit v set means the speaker writes 1 on input v);
    the second speaker and function are chosen by the first bit's value.
    """

    first_speaker: str
    first_fn: int
    second_speakers: tuple[str, str]
    second_fns: tuple[int, int]

    def __post_init__(self) -> None:
        if self.first_speaker not in _SPEAKERS:
            raise ValueError(f"unknown speaker {self.first_speaker!r}")
        for sp in self.second_speakers:
            if sp not in _SPEAKERS:
                raise ValueError(f"unknown speaker {sp!r}")
        for fn in (self.first_fn, *self.second_fns):
            if not 0 <= fn <= 255:
                raise ValueError(f"message function mask {fn} outside 0..255")


def candidate_feasible(candidate: ProtocolCandidate) -> bool:
    """Direct fiber check for one explicit candidate (no bitmask machinery).

    Used as an independent oracle against the packed search counting.
    """
    for x in range(8):
        seen: dict[tuple[int, int], int] = {}
        for y in range(8):
            z = third_word(x, y)
            words = {"A": x, "B": y, "C": z}
            b1 = (candidate.first_fn >> words[candidate.first_speaker]) & 1
            sp2 = candidate.second_speakers[b1]
            b2 = (candidate.second_fns[b1] >> words[sp2]) & 1
            value = f3(x, y)
            prior = seen.setdefault((b1, b2), value)
            if prior != value:
                return False
    return True


def three_bit_messages_feasible() -> bool:
    """Run the three-bit protocol's message functions through the fiber check.

    Bob announces his zero count mod 4 (a four-valued broadcast); Carol adds
    the high bit of hers. Correct iff the game value is constant on every
    (x, transcript) fiber, which certifies that a three-bit budget is
    attainable in the same model the two-bit search exhausts.
    """
    for x in range(8):
        seen: dict[tuple[int, int], int] = {}
        for y in range(8):
            z = third_word(x, y)
            rb_mod4 = (3 - y.bit_count()) & 3
            rc_high = ((3 - z.bit_count()) & 3) >> 1
            value = f3(x, y)
            prior = seen.setdefault((rb_mod4, rc_high), value)
            if prior != value:
                return False
    return True


# ---------------------------------------------------------------------------
# Two-party searches (the imported inner-product and parity facts)
# ---------------------------------------------------------------------------


def _table_rows(table: FunctionTable) -> list[int]:
    """Row masks over the second word's values for each first-word value."""
    if table.arity != 2:
        raise ValueError(f"need a two-party table, got arity {table.arity}")
    n = table.length
    size = 1 << n
    rows = [0] * size
    for vx in range(size):
        wx = BitString.from_index(vx, n)
        for vy in range(size):
            wy = BitString.from_index(vy, n)
            if table.value(wx, wy):
                rows[vx] |= 1 << vy
    return rows


def search_two_party_two_bit(table: FunctionTable, workers: int = 1) -> SearchResult:
    """Count correct adaptive two-bit two-party protocols for a tabulated f.

    Either party may send either bit; the second sender and function may
    depend on the first bit; the receiver (who holds the first word) must
    end up with f constant on every (input, transcript) fiber.
    """
    del workers  # single pass; kept for interface symmetry
    start = time.perf_counter()
    n = table.length
    if n > 3:
        raise ValueError(f"two-bit search supports length <= 3, got {n}")
    size = 1 << n
    fn_count = 1 << size
    full = fn_count - 1  # all-y subset mask
    full_bitmap = (1 << fn_count) - 1
    rows = _table_rows(table)

    def const_on(sub: int, vx: int) -> bool:
        hits = sub & rows[vx]
        return hits == 0 or hits == sub

    # valid[vx][s]: bitmap over second-message masks m splitting s into
    # f-constant fibers for receiver input vx.
    valid = [[0] * fn_count for _ in range(size)]
    for vx in range(size):
        for s in range(fn_count):
            acc = 0
            for m in range(fn_count):
                if const_on(s & m, vx) and const_on(s & ~m & full, vx):
                    acc |= 1 << m
            valid[vx][s] = acc

    def second_counts(ys: Sequence[int]) -> int:
        n_a = fn_count if all(const_on(ys[vx], vx) for vx in range(size)) else 0
        bitmap = full_bitmap
        for vx in range(size):
            bitmap &= valid[vx][ys[vx]]
        return n_a + bitmap.bit_count()

    memo: dict[tuple[int, ...], int] = {}

    def counts_for(ys: tuple[int, ...]) -> int:
        cached = memo.get(ys)
        if cached is None:
            cached = second_counts(ys)
            memo[ys] = cached
        return cached

    feasible = 0
    for first_speaker in ("A", "B"):
        for m1 in range(fn_count):
            sides = []
            for bit in (0, 1):
                if first_speaker == "A":
                    ys = tuple(
                        full if ((m1 >> vx) & 1) == bit else 0 for vx in range(size)
                    )
                else:
                    mask = m1 if bit else ~m1 & full
                    ys = (mask,) * size
                sides.append(counts_for(ys))
            feasible += sides[0] * sides[1]
    per_branch = 2 * fn_count
    return SearchResult(
        name="two_party_two_bit",
        feasible=feasible,
        candidates=per_branch * per_branch * per_branch,
        elapsed_s=time.perf_counter() - start,
        workers=1,
    )


def search_two_party_one_bit(table: FunctionTable) -> SearchResult:
    """Count correct one-bit two-party protocols for a tabulated f."""
    start = time.perf_counter()
    n = table.length
    if n > 4:
        raise ValueError(f"one-bit search supports length <= 4, got {n}")
    size = 1 << n
    fn_count = 1 << size
    full = fn_count - 1
    rows = _table_rows(table)

    def const_on(sub: int, vx: int) -> bool:
        hits = sub & rows[vx]
        return hits == 0 or hits == sub

    feasible = 0
    # Sender B: the bit must split every row into f-constant fibers.
    for m in range(fn_count):
        if all(const_on(m, vx) and const_on(~m & full, vx) for vx in range(size)):
            feasible += 1
    # Sender A: the bit tells the receiver nothing; f must already be
    # determined by her own word, in which case any of the fn_count masks works.
    if all(const_on(full, vx) for vx in range(size)):
        feasible += fn_count
    return SearchResult(
        name="two_party_one_bit",
        feasible=feasible,
        candidates=2 * fn_count,
        elapsed_s=time.perf_counter() - start,
        workers=1,
    )


def send_all_bits_feasible(table: FunctionTable) -> bool:
    """Fiber check for the n-bit protocol where B sends his whole word."""
    rows = _table_rows(table)
    size = 1 << table.length
    for vx in range(size):
        for vy in range(size):
            fiber = 1 << vy  # the transcript pins y exactly
            hits = fiber & rows[vx]
            if hits not in (0, fiber):
                return False
    return True


def search_two_party_ip3(workers: int = 1) -> SearchResult:
    """Two-bit search for the length-3 inner product (expected count: 0)."""
    result = search_two_party_two_bit(inner_product_table(3), workers=workers)
    return SearchResult(
        name="two_party_ip3",
        feasible=result.feasible,
        candidates=result.candidates,
        elapsed_s=result.elapsed_s,
        workers=result.workers,
    )
