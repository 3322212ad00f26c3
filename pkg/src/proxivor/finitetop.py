"""Finite topological spaces and proximity relations on their subsets.

Subsets of an ``n``-point carrier are int bitmasks (bit ``i`` is point
``i``).  A :class:`ProximityRelation` is a predicate on ordered pairs of
bitmasks; the axiom checkers enumerate subsets exhaustively, which keeps
carriers small (see the ``MAX_*`` caps).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain, combinations
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .axioms import AxiomReport, first_failure as _first_failure

MAX_POINTS = 20
MAX_STRONG_POINTS = 12
MAX_LODATO_POINTS = 7
MAX_LEMMA_POINTS = 5


class CarrierTooLarge(ValueError):
    pass


class HypothesesNotSatisfied(ValueError):
    """A theorem checker was called on a model outside its hypotheses."""


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FiniteTopology:
    labels: tuple[str, ...]
    opens: frozenset[int]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise ValueError("empty carrier")
        if n > MAX_POINTS:
            raise CarrierTooLarge(f"at most {MAX_POINTS} points supported")
        if len(set(self.labels)) != n:
            raise ValueError("duplicate point labels")
        full = (1 << n) - 1
        if 0 not in self.opens or full not in self.opens:
            raise ValueError("a topology must contain the empty set and the carrier")
        for a in self.opens:
            if a & ~full:
                raise ValueError("open set outside the carrier")
        for a, b in combinations(self.opens, 2):
            if a | b not in self.opens or a & b not in self.opens:
                raise ValueError("family is not closed under union and intersection")

    @classmethod
    def from_sets(cls, labels: Sequence[str], opens: Iterable[Iterable[str]]) -> "FiniteTopology":
        index = {x: i for i, x in enumerate(labels)}
        masks = set()
        for o in opens:
            m = 0
            for x in o:
                if x not in index:
                    raise ValueError(f"unknown point {x!r}")
                m |= 1 << index[x]
            masks.add(m)
        return cls(tuple(labels), frozenset(masks))

    @classmethod
    def discrete(cls, n: int, labels: Optional[Sequence[str]] = None) -> "FiniteTopology":
        labels = tuple(labels) if labels else tuple(str(i) for i in range(n))
        return cls(labels, frozenset(range(1 << n)))

    @classmethod
    def indiscrete(cls, n: int) -> "FiniteTopology":
        return cls(tuple(str(i) for i in range(n)), frozenset({0, (1 << n) - 1}))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def subsets(self) -> range:
        return range(1 << self.n)

    def mask(self, points: Iterable[str]) -> int:
        index = {x: i for i, x in enumerate(self.labels)}
        m = 0
        for x in points:
            m |= 1 << index[x]
        return m

    def names(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def complement(self, a: int) -> int:
        return self.full & ~a

    @cached_property
    def _interior_table(self) -> list[int]:
        opens = sorted(self.opens)
        table = []
        for a in range(1 << self.n):
            acc = 0
            for o in opens:
                if o & ~a == 0:
                    acc |= o
            table.append(acc)
        return table

    def interior(self, a: int) -> int:
        return self._interior_table[a]

    def closure(self, a: int) -> int:
        return self.complement(self.interior(self.complement(a)))

    def is_open(self, a: int) -> bool:
        return a in self.opens

    def is_closed(self, a: int) -> bool:
        return self.complement(a) in self.opens

    def is_t1(self) -> bool:
        return all(self.is_closed(1 << i) for i in range(self.n))

    def closed_sets(self) -> list[int]:
        return sorted(self.complement(o) for o in self.opens)


def interior(a: int, t: FiniteTopology) -> int:
    return t.interior(a)


def closure_top(a: int, t: FiniteTopology) -> int:
    return t.closure(a)


def all_topologies(n: int) -> list[FiniteTopology]:
    """Every topology on ``n`` labeled points (1, 1, 4, 29, 355 for n = 0..4)."""
    full = (1 << n) - 1
    middle = list(range(1, full))
    out = []
    labels = tuple(str(i) for i in range(n))
    for choice in range(1 << len(middle)):
        fam = {0, full} | {middle[k] for k in range(len(middle)) if choice >> k & 1}
        if all(a | b in fam and a & b in fam for a, b in combinations(fam, 2)):
            out.append(FiniteTopology(labels, frozenset(fam)))
    return out


# -- proximity relations -----------------------------------------------------

LODATO = "lodato"
STRONG = "strong"


@dataclass(frozen=True)
class ProximityRelation:
    carrier: FiniteTopology
    rel: Callable[[int, int], bool] = field(compare=False)
    role: str = LODATO
    name: str = "custom"

    def __call__(self, a: int, b: int) -> bool:
        return bool(self.rel(a, b))

    def near(self, a: int, b: int) -> bool:
        return bool(self.rel(a, b))


def from_pairs(t: FiniteTopology, pairs: Iterable[tuple[int, int]], role: str = LODATO,
               symmetric: bool = False) -> ProximityRelation:
    table = set()
    for a, b in pairs:
        table.add((a, b))
        if symmetric:
            table.add((b, a))
    frozen = frozenset(table)
    return ProximityRelation(t, lambda a, b: (a, b) in frozen, role, "pairs")


def nonempty_intersection(t: FiniteTopology) -> ProximityRelation:
    return ProximityRelation(t, lambda a, b: a & b != 0, LODATO, "nonempty_intersection")


def cl_cl(t: FiniteTopology) -> ProximityRelation:
    """``A near B`` iff their closures meet."""
    return ProximityRelation(t, lambda a, b: t.closure(a) & t.closure(b) != 0,
                             LODATO, "cl_cl")


def canonical_strong(t: FiniteTopology, x_clause: bool = True) -> ProximityRelation:
    """Strong proximity from nonempty intersection of interiors.

    Singletons follow the point conventions: ``{x}`` is near a non-singleton
    ``B`` iff ``x`` is interior to ``B``, and two singletons are near iff
    equal.  With ``x_clause`` every nonempty set is also near the whole
    carrier; ``x_clause=False`` drops that rule (the reading used when an
    example evaluates ``X`` against a set with empty interior as far).
    """
    full = t.full

    def rel(a: int, b: int) -> bool:
        if a == 0 or b == 0:
            return False
        if x_clause and (a == full or b == full):
            return True
        a_single = popcount(a) == 1
        b_single = popcount(b) == 1
        if a_single and b_single:
            return a == b
        if a_single:
            return a & t.interior(b) != 0
        if b_single:
            return b & t.interior(a) != 0
        return t.interior(a) & t.interior(b) != 0

    name = "interior_intersection" if x_clause else "interior_intersection_no_x"
    return ProximityRelation(t, rel, STRONG, name)


BUILTINS = {
    "nonempty_intersection": nonempty_intersection,
    "interior_intersection": canonical_strong,
    "interior_intersection_no_x": lambda t: canonical_strong(t, x_clause=False),
    "cl_cl": cl_cl,
}


def builtin_relation(name: str, t: FiniteTopology) -> ProximityRelation:
    try:
        return BUILTINS[name](t)
    except KeyError:
        raise ValueError(f"unknown relation {name!r}; choose from {sorted(BUILTINS)}") from None


def proximal_closure(a: int, delta: ProximityRelation) -> int:
    t = delta.carrier
    return sum(1 << x for x in range(t.n) if delta(1 << x, a))


def strongly_included(a: int, b: int, delta: ProximityRelation) -> bool:
    """``A << B`` iff ``A`` is far from the complement of ``B``."""
    return not delta(a, delta.carrier.complement(b))


# -- axiom checkers ----------------------------------------------------------

def check_lodato(delta: ProximityRelation) -> AxiomReport:
    """P0-P5 by exhaustive enumeration, plus compatibility with the topology."""
    t = delta.carrier
    if t.n > MAX_LODATO_POINTS:
        raise CarrierTooLarge(f"Lodato check enumerates triples; at most {MAX_LODATO_POINTS} points")
    subs = t.subsets()
    names = t.names
    near = [[delta(a, b) for b in subs] for a in subs]

    p0 = _first_failure("P0", ((not near[a][b] or near[b][a], (names(a), names(b)))
                               for a in subs for b in subs))
    p1 = _first_failure("P1", ((not near[a][b] or (a != 0 and b != 0), (names(a), names(b)))
                               for a in subs for b in subs))
    p2 = _first_failure("P2", ((a & b == 0 or near[a][b], (names(a), names(b)))
                               for a in subs for b in subs))
    p3 = _first_failure("P3", ((near[a][b | c] == (near[a][b] or near[a][c]),
                                (names(a), names(b), names(c)))
                               for a in subs for b in subs for c in subs))

    def p4_cases():
        for b in subs:
            pts = [1 << x for x in bits(b)]
            for c in subs:
                if not all(near[p][c] for p in pts):
                    continue
                for a in subs:
                    if near[a][b]:
                        yield near[a][c], (names(a), names(b), names(c))

    p4 = _first_failure("P4", p4_cases())
    p5 = _first_failure("P5", ((not near[1 << x][1 << y] or x == y, ([t.labels[x]], [t.labels[y]]))
                               for x in range(t.n) for y in range(t.n)))
    report = AxiomReport([p0, p1, p2, p3, p4])
    report.separated = p5.passed
    report.separation_witness = p5.witness
    report.compatible = True
    for a in subs:
        pc, cl = proximal_closure(a, delta), t.closure(a)
        if pc != cl:
            report.compatible = False
            report.compatibility_witness = (names(a), names(pc), names(cl))
            break
    return report


def lodato_passed(report: AxiomReport) -> bool:
    return all(report[n].passed for n in ("P0", "P1", "P2", "P3", "P4"))


def check_strong(delta: ProximityRelation, t: Optional[FiniteTopology] = None) -> AxiomReport:
    """N0-N6 by exhaustive enumeration.

    N0 is read as: the empty set is far from everything and the carrier is
    near every nonempty set.  For N3 it is enough to check one-point
    enlargements: any union containing ``B`` is reached from ``B`` by adding
    points one at a time, and every intermediate set keeps ``int(B)``.
    """
    t = t or delta.carrier
    if t.n > MAX_STRONG_POINTS:
        raise CarrierTooLarge(f"exhaustive N3 needs at most {MAX_STRONG_POINTS} points")
    subs = t.subsets()
    full = t.full
    names = t.names
    near = [[delta(a, b) for b in subs] for a in subs]
    interior = [t.interior(a) for a in subs]

    n0 = _first_failure("N0", chain(
        ((not near[0][a] and not near[a][0], ([], names(a))) for a in subs),
        ((near[full][a], (names(full), names(a))) for a in subs if a)))
    n1 = _first_failure("N1", ((near[a][b] == near[b][a], (names(a), names(b)))
                               for a in subs for b in subs))
    n2 = _first_failure("N2", ((not near[a][b] or a & b != 0, (names(a), names(b)))
                               for a in subs for b in subs))

    def n3_cases():
        for a in subs:
            for b in subs:
                if not near[a][b] or interior[b] == 0:
                    continue
                for x in range(t.n):
                    if not b >> x & 1:
                        u = b | 1 << x
                        yield near[a][u], (names(a), names(b), names(u))

    n3 = _first_failure("N3", n3_cases(), "witness: (A, B_i*, union)")
    n4 = _first_failure("N4", ((interior[a] & interior[b] == 0 or near[a][b], (names(a), names(b)))
                               for a in subs for b in subs))
    n5 = _first_failure("N5", ((near[1 << x][a], ([t.labels[x]], names(a)))
                               for a in subs for x in bits(interior[a])))
    n6 = _first_failure("N6", ((near[1 << x][1 << y] == (x == y), ([t.labels[x]], [t.labels[y]]))
                               for x in range(t.n) for y in range(t.n)))
    return AxiomReport([n0, n1, n2, n3, n4, n5, n6])


# -- regular sets ------------------------------------------------------------

def regular_open_sets(t: FiniteTopology) -> list[int]:
    return [a for a in t.subsets() if t.interior(t.closure(a)) == a]


def regular_closed_sets(t: FiniteTopology) -> list[int]:
    """Nonempty sets equal to the closure of their interior."""
    return [f for f in t.subsets() if f and t.closure(t.interior(f)) == f]


def rcl_star(t: FiniteTopology) -> list[int]:
    return sorted(set(regular_closed_sets(t)) | {1 << x for x in range(t.n)})


def is_regularly_weakly_r0(t: FiniteTopology, delta: ProximityRelation) -> tuple[bool, Optional[tuple[int, int]]]:
    """Every nonempty difference of regular opens strongly contains a regular closed set."""
    ro = regular_open_sets(t)
    rcl = regular_closed_sets(t)
    for a in ro:
        for b in ro:
            diff = a & ~b
            if diff and not any(strongly_included(c, diff, delta) for c in rcl):
                return False, (a, b)
    return True, None


def sigma(family: Iterable[int]) -> frozenset[int]:
    """Closure of a family of sets under finite unions."""
    out = set(family)
    frontier = set(out)
    while frontier:
        new = {a | b for a in frontier for b in out} - out
        out |= new
        frontier = new
    return frozenset(out)


# -- hypertopology subbase on RCL*(X) ----------------------------------------

HIT_STRONG = "hit_strong"
FAR_MISS = "far_miss"


@dataclass(frozen=True)
class SubbaseElement:
    kind: str
    anchor: int
    members: frozenset[int]


def hit_members(v: int, delta_strong: ProximityRelation, hyperspace: Sequence[int]) -> frozenset[int]:
    return frozenset(e for e in hyperspace if delta_strong(e, v))


def far_miss_members(a: int, delta: ProximityRelation, hyperspace: Sequence[int]) -> frozenset[int]:
    comp = delta.carrier.complement(a)
    return frozenset(e for e in hyperspace if not delta(e, comp))


def subbase_elements(t: FiniteTopology, delta: ProximityRelation,
                     delta_strong: ProximityRelation, bfamily: Iterable[int]) -> list[SubbaseElement]:
    """One hit element per nonempty regular open V, one far-miss element per
    regular open A whose complement lies in the family."""
    hyper = rcl_star(t)
    ro = regular_open_sets(t)
    fam = set(bfamily)
    out = [SubbaseElement(HIT_STRONG, v, hit_members(v, delta_strong, hyper)) for v in ro if v]
    out += [SubbaseElement(FAR_MISS, a, far_miss_members(a, delta, hyper))
            for a in ro if t.complement(a) in fam]
    return out


# -- theorem checkers at finite scale ----------------------------------------

def _require_hypotheses(t: FiniteTopology, delta: ProximityRelation) -> None:
    if not t.is_t1():
        raise HypothesesNotSatisfied("hypotheses not satisfied: space is not T1")
    for a in t.subsets():
        if proximal_closure(a, delta) != t.closure(a):
            raise HypothesesNotSatisfied("hypotheses not satisfied: proximity is not compatible")
    ok, _ = is_regularly_weakly_r0(t, delta)
    if not ok:
        raise HypothesesNotSatisfied("hypotheses not satisfied: not regularly weakly R0")


@dataclass
class LemmaVerdict:
    equivalent: bool
    a_holds: bool
    b_holds: bool
    vacuous: bool
    counterexample: Optional[tuple] = None


def _basic_open(t: FiniteTopology, delta: ProximityRelation, delta_strong: ProximityRelation,
                opens: Sequence[int], closed: int, hyper: Sequence[int]) -> frozenset[int]:
    # (meet of hit sets) intersected with the far-miss set of the complement of `closed`
    return frozenset(e for e in hyper
                     if all(delta_strong(e, u) for u in opens) and not delta(e, closed))


def lemma_equivalence_check(t: FiniteTopology, delta: ProximityRelation,
                            delta_strong: ProximityRelation,
                            u_list: Sequence[int], v_list: Sequence[int], b: int, d: int,
                            bfamily: Optional[Iterable[int]] = None,
                            check_hypotheses: bool = True) -> LemmaVerdict:
    """Compare basic-open inclusion (a) with the set condition (b).

    (a) is decided by enumerating RCL*(X); (b) is evaluated directly.  An
    empty left-hand basic open set makes (a) hold vacuously; such instances
    are flagged ``vacuous`` since the inclusion then says nothing about the
    defining sets.
    """
    if check_hypotheses:
        _require_hypotheses(t, delta)
        ro = set(regular_open_sets(t))
        rcl = set(regular_closed_sets(t))
        if not u_list or not v_list:
            raise HypothesesNotSatisfied("hypotheses not satisfied: empty open list")
        if any(u not in ro for u in chain(u_list, v_list)):
            raise HypothesesNotSatisfied("hypotheses not satisfied: a listed set is not regular open")
        if b not in rcl or d not in rcl:
            raise HypothesesNotSatisfied("hypotheses not satisfied: B, D must be regular closed")
        if bfamily is not None:
            sig = sigma(bfamily)
            if b not in sig or d not in sig:
                raise HypothesesNotSatisfied("hypotheses not satisfied: B, D must lie in Sigma(family)")
    hyper = rcl_star(t)
    left = _basic_open(t, delta, delta_strong, u_list, b, hyper)
    right = _basic_open(t, delta, delta_strong, v_list, d, hyper)
    a_holds = left <= right
    comp_b, comp_d = t.complement(b), t.complement(d)
    b_holds = (comp_b & ~comp_d == 0) and all(
        any((u & comp_b) & ~(v & comp_d) == 0 for u in u_list) for v in v_list)
    verdict = LemmaVerdict(a_holds == b_holds, a_holds, b_holds, not left)
    if not verdict.equivalent:
        witness = next(iter(sorted(left - right)), None)
        verdict.counterexample = (tuple(u_list), tuple(v_list), b, d, witness)
    return verdict


@dataclass
class SweepSummary:
    instances: int = 0
    admissible: int = 0
    vacuous: int = 0
    vacuous_inequivalent: int = 0
    equivalent: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.admissible > 0 and self.equivalent == self.admissible

    def to_json(self, t: Optional[FiniteTopology] = None) -> dict:
        def show(m):
            return t.names(m) if t is not None else m

        return {
            "pass": self.passed,
            "instances": self.instances,
            "admissible": self.admissible,
            "vacuous": self.vacuous,
            "vacuous_inequivalent": self.vacuous_inequivalent,
            "equivalent": self.equivalent,
            "counterexamples": [
                {"U": [show(u) for u in c[0]], "V": [show(v) for v in c[1]],
                 "B": show(c[2]), "D": show(c[3])}
                for c in self.counterexamples[:10]],
        }


def lemma_sweep(t: FiniteTopology, delta: ProximityRelation, delta_strong: ProximityRelation,
                bfamily: Optional[Iterable[int]] = None, max_size: int = 2) -> SweepSummary:
    """Exhaustive (a) <=> (b) check over every admissible choice.

    Lists range over sets of 1..``max_size`` distinct regular open sets;
    B and D over regular closed members of Sigma(family) (all regular closed
    sets when no family is given).  Instances with an empty left basic open
    set are counted as vacuous and excluded from the admissible total.
    """
    if t.n > MAX_LEMMA_POINTS:
        raise CarrierTooLarge(f"lemma sweep supports at most {MAX_LEMMA_POINTS} points")
    _require_hypotheses(t, delta)
    ro = regular_open_sets(t)
    rcl = regular_closed_sets(t)
    if bfamily is not None:
        sig = sigma(bfamily)
        closed_choices = [f for f in rcl if f in sig]
    else:
        closed_choices = rcl
    hyper = rcl_star(t)
    pos = {e: k for k, e in enumerate(hyper)}
    lists = [c for k in range(1, max_size + 1) for c in combinations(ro, k)]

    # bitmask over RCL* of each basic open set, and far-miss masks per closed set
    hit_mask = {}
    for u in ro:
        m = 0
        for e in hyper:
            if delta_strong(e, u):
                m |= 1 << pos[e]
        hit_mask[u] = m
    miss_mask = {}
    for f in closed_choices:
        m = 0
        for e in hyper:
            if not delta(e, f):
                m |= 1 << pos[e]
        miss_mask[f] = m
    all_mask = (1 << len(hyper)) - 1
    meet = {}
    for lst in lists:
        m = all_mask
        for u in lst:
            m &= hit_mask[u]
        meet[lst] = m

    full = t.full
    summary = SweepSummary()
    for ul in lists:
        for bset in closed_choices:
            left = meet[ul] & miss_mask[bset]
            comp_b = full & ~bset
            u_cut = [u & comp_b for u in ul]
            for dset in closed_choices:
                comp_d = full & ~dset
                first = comp_b & ~comp_d == 0
                right_miss = miss_mask[dset]
                for vl in lists:
                    summary.instances += 1
                    a_holds = left & ~(meet[vl] & right_miss) == 0
                    b_holds = first and all(
                        any(uc & ~(v & comp_d) == 0 for uc in u_cut) for v in vl)
                    if not left:
                        summary.vacuous += 1
                        summary.vacuous_inequivalent += a_holds != b_holds
                        continue
                    summary.admissible += 1
                    if a_holds == b_holds:
                        summary.equivalent += 1
                    else:
                        summary.counterexamples.append((ul, vl, bset, dset))
    return summary


def second_countability_condition_check(t: FiniteTopology, delta: ProximityRelation,
                                        bfamily: Iterable[int], bprime: Iterable[int],
                                        check_hypotheses: bool = True) -> tuple[bool, Optional[tuple[int, int]]]:
    """For each B in the family and each A in RCL*(X) far from B, look for
    D in Sigma(bprime) with B inside D and D far from A."""
    if check_hypotheses:
        _require_hypotheses(t, delta)
    fam = list(bfamily)
    sig = sorted(sigma(bprime))
    hyper = rcl_star(t)
    for b in fam:
        for a in hyper:
            if delta(a, b):
                continue
            if not any(b & ~dset == 0 and strongly_included(dset, t.complement(a), delta)
                       for dset in sig):
                return False, (b, a)
    return True, None
