"""
Equivalence of matrix presentations.

Decides whether Coker X and Coker Y are isomorphic by asking whether the
ideal of scalar solutions U, V of U*X = Y*V with det U = det V = 1 is the
unit ideal; checks explicit witnesses modulo relation ideals; runs the
classification of the catalog with a union-find over decided pairs.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .catalog import (
    AlphaParams,
    EtaParams,
    RawCaseParams,
    ThetaParams,
    alpha,
    beta,
    d_cycle,
    def_matrix,
    eta,
    raw_case,
    theta,
)
from .constants import DEFAULT_AUDIT_SAMPLE, DEFAULT_JOBS, DEFAULT_SEED, U_PREFIX, V_PREFIX
from .cyclofield import ONE, CycNum, cube_roots_of_minus_one, primitive_cube_roots_of_unity
from .groebner import Ideal, buchberger
from .logger import active_level, get_logger, init_worker_logging
from .matpoly import MatrixFactorization, PolyMat, det, fitting_ideal, mat_mul
from .models import CatalogEntry, CheckResult, ClassInfo, ClassReport, EquivVerdict
from .multipoly import OrderLike, Poly, VarTable, as_order, coefficient_map

logger = get_logger("equiv")

EQUIVALENT = "equivalent"
NOT_EQUIVALENT = "not-equivalent"


class ClassificationError(RuntimeError):
    """Raised when an audited rule or reduction does not hold."""


# Equivalence ideal


def unknown_table(n: int) -> VarTable:
    """u1..u_{n^2}, v1..v_{n^2}; U[i][k] is u_{i*n+k+1}."""
    return VarTable(
        tuple(f"{U_PREFIX}{k}" for k in range(1, n * n + 1))
        + tuple(f"{V_PREFIX}{k}" for k in range(1, n * n + 1))
    )


def _unknown_matrix(prefix: str, n: int, vars: VarTable) -> PolyMat:
    return PolyMat(
        tuple(
            tuple(Poly.variable(vars, f"{prefix}{i * n + k + 1}") for k in range(n))
            for i in range(n)
        )
    )


def build_equiv_ideal(X: PolyMat, Y: PolyMat, order: OrderLike = None) -> Ideal:
    """
    Ideal of U, V with U*X - Y*V = 0 and det U = det V = 1.

    Every coefficient of every entry of U*X - Y*V with respect to the
    monomials in the matrix variables is a generator.

    Raises:
        ValueError: If X and Y differ in size or variable table
    """
    if X.n != Y.n:
        raise ValueError(f"Size mismatch: {X.n}x{X.n} vs {Y.n}x{Y.n}")
    if X.vars != Y.vars:
        raise ValueError("X and Y use different variable tables")
    n = X.n
    unknowns = unknown_table(n)
    joint = unknowns.extend(X.vars.names)
    U = _unknown_matrix(U_PREFIX, n, joint)
    V = _unknown_matrix(V_PREFIX, n, joint)
    C = mat_mul(U, X.embed(joint)) - mat_mul(Y.embed(joint), V)
    gens: List[Poly] = []
    for row in C.rows:
        for entry in row:
            gens.extend(coefficient_map(entry, X.vars.names, unknowns).values())
    one = Poly.constant(unknowns, ONE)
    gens.append(det(_unknown_matrix(U_PREFIX, n, unknowns)) - one)
    gens.append(det(_unknown_matrix(V_PREFIX, n, unknowns)) - one)
    return Ideal(gens, as_order(order), unknowns)


def decide_equiv(
    X: PolyMat, Y: PolyMat, order: OrderLike = None, prereduce_linear: bool = True
) -> EquivVerdict:
    """
    Decide Coker X ~ Coker Y over the algebraic closure.

    Not equivalent exactly when the equivalence ideal is the unit ideal.
    """
    gb = buchberger(build_equiv_ideal(X, Y, order), prereduce_linear=prereduce_linear)
    outcome = NOT_EQUIVALENT if gb.is_trivial() else EQUIVALENT
    logger.debug(f"decide_equiv: {outcome} (basis of {len(gb)} elements)")
    return EquivVerdict(outcome, gb)


def verify_witness(
    X: PolyMat,
    Y: PolyMat,
    U: PolyMat,
    V: PolyMat,
    relations: Optional[Ideal] = None,
) -> bool:
    """
    Check U*X = Y*V and det U = det V = 1 modulo the relation ideal.

    U, V and the relations live in auxiliary variables (for instance a
    root l of 9*l^3 - 8*m*p^2); X and Y in the matrix variables.
    """
    ynames = set(X.vars.names)
    aux_names: List[str] = []
    tables = [U.vars, V.vars] + ([relations.vars] if relations is not None else [])
    for table in tables:
        for name in table.names:
            if name not in ynames and name not in aux_names:
                aux_names.append(name)
    aux = VarTable(tuple(aux_names))
    joint = aux.extend(X.vars.names)

    C = mat_mul(U.embed(joint), X.embed(joint)) - mat_mul(Y.embed(joint), V.embed(joint))
    to_check: List[Poly] = []
    for row in C.rows:
        for entry in row:
            to_check.extend(coefficient_map(entry, X.vars.names, aux).values())
    one = Poly.constant(aux, ONE)
    to_check.append(det(U.embed(aux)) - one)
    to_check.append(det(V.embed(aux)) - one)

    if relations is None:
        return all(p.is_zero() for p in to_check)
    gb = buchberger(
        Ideal([g.embed(aux) for g in relations.generators], relations.order, aux)
    )
    return all(gb.contains(p) for p in to_check)


# Explicit witness for the reduction of B to the transpose of A


@dataclass
class Witness:
    """An equivalence U*X = Y*V valid modulo ``relations``."""

    X: PolyMat
    Y: PolyMat
    U: PolyMat
    V: PolyMat
    relations: Ideal


def b_to_at_witness(n: CycNum, p: CycNum, q: CycNum, y: CycNum, aux: str = "l") -> Witness:
    """
    Witness for beta(y*n*q^2, p, q*y, y^2) ~ B(m, n, p, q, y) with m = y*n*p/q.

    The scalar l is a root of 9*l^3 - 8*m*p^2, which in general does not lie
    in Q(e); it is carried symbolically through the relation ideal.
    """
    m = y * n * p / q
    X = beta(AlphaParams(y * n * q * q, p, q * y, y * y))
    Y = raw_case(RawCaseParams("B", m, n, p, q, y))
    table = VarTable((aux,))
    lam = Poly.variable(table, aux)
    zero = Poly.zero(table)
    half = Fraction(1, 2)
    three_halves = Fraction(3, 2)
    U = PolyMat(
        (
            (zero, lam * (-half * p), lam * (half * p * p)),
            (lam * (three_halves * m * m), zero, zero),
            (zero, lam * (-half * p * p), lam),
        )
    )
    V = PolyMat(
        (
            (zero, lam * (three_halves * m * m), zero),
            (lam * (-half * p), zero, lam * (-half * p * p)),
            (lam * (half * p * p), zero, lam),
        )
    )
    relation = lam**3 * 9 - Poly.constant(table, 8 * m * p * p)
    return Witness(X, Y, U, V, Ideal([relation], vars=table))


# Parameter rules


def alpha_self_equiv_conditions(p1: AlphaParams, p2: AlphaParams) -> bool:
    """
    The polynomial conditions for alpha(p1) ~ alpha(p2).

    They hold exactly when p2 = p1 or p2 is the twist of p1.
    """
    a, b, c, d, x = p1.a, p1.b, p1.c, p1.d, p1.eps
    n, p, q, y = p2.b, p2.c, p2.d, p2.eps
    equations = [
        d * d - d * q * y - d * q + q * q * y,
        c + d * p * q * q,
        b + d * n * q * q,
        a + d * n * p * y + n * p * q,
        a * b * b * c * c * d * d + d * q * q * y - 1,
    ]
    return all(not e for e in equations)


Instance = Tuple[str, PolyMat, PolyMat]


@dataclass(frozen=True)
class ReductionMap:
    """
    A proven rewriting of a raw case into a catalog family.

    ``kind`` is "equivalence" (checked by decide_equiv), "identity" (the two
    matrices coincide) or "elementary" (related by the D-cycle operations).
    """

    name: str
    source: str
    target: str
    rule: str
    instances: Callable[[], List[Instance]]
    kind: str = "equivalence"


def _txt(*values: CycNum) -> str:
    return ",".join(v.to_text() for v in values)


def _b_instances(transposed: bool) -> List[Instance]:
    out = []
    roots = cube_roots_of_minus_one()
    for n, p, q, y in product(roots, roots, roots, primitive_cube_roots_of_unity()):
        m = y * n * p / q
        src = raw_case(RawCaseParams("Bt" if transposed else "B", m, n, p, q, y))
        target_params = AlphaParams(y * n * q * q, p, q * y, y * y)
        tgt = alpha(target_params) if transposed else beta(target_params)
        out.append((f"B({_txt(m, n, p, q, y)})", src, tgt))
    return out


def _c_instances(transposed: bool) -> List[Instance]:
    out = []
    roots = cube_roots_of_minus_one()
    for n, p, q, y in product(roots, roots, roots, primitive_cube_roots_of_unity()):
        m = y * p * q / n
        src = raw_case(RawCaseParams("Ct" if transposed else "C", m, n, p, q, y))
        target_params = AlphaParams(n, n * n * p, n * n * q, y)
        tgt = alpha(target_params) if transposed else beta(target_params)
        out.append((f"C({_txt(m, n, p, q, y)})", src, tgt))
    return out


def _d_cycle_instances() -> List[Instance]:
    roots = cube_roots_of_minus_one()
    out = []
    for (a, b, c), (p, q, r) in product(permutations(roots), permutations(roots)):
        out.append(
            (
                f"D(({_txt(a, b, c)}),({_txt(p, q, r)}))",
                def_matrix("D", (a, b, c), (p, q, r)),
                def_matrix("D", (c, a, b), (q, r, p)),
            )
        )
    return out


def _eta_instances() -> List[Instance]:
    roots = cube_roots_of_minus_one()
    out = []
    for (p, q, r), e in product(permutations(roots), primitive_cube_roots_of_unity()):
        out.append(
            (
                f"D((-1,{_txt(-e, -e * e)}),({_txt(p, q, r)}))",
                def_matrix("D", (-ONE, -e, -e * e), (p, q, r)),
                eta(EtaParams(p, q, r, e)),
            )
        )
    return out


def _ef_instances(case: str, branch: str) -> List[Instance]:
    """
    E or F with first triple (-1, -y, -y^2), split by y = -p*q^2 (D) or
    y = -p^2*q (theta). The D target uses x = y^2 in its first triple.
    """
    roots = cube_roots_of_minus_one()
    out = []
    for p, q, r in permutations(roots):
        y = -p * q * q if branch == "D" else -p * p * q
        first = (-ONE, -y, -y * y)
        src = def_matrix(case, first, (p, q, r))
        if branch == "D":
            second = (r, q, p) if case == "E" else (-r * r, -q * q, -p * p)
            x = y * y
            tgt = def_matrix("D", (-ONE, -x, -x * x), second)
        else:
            tgt = theta(ThetaParams(p, q, r) if case == "E" else ThetaParams(r, q, p))
        out.append((f"{case}(({_txt(*first)}),({_txt(p, q, r)}))", src, tgt))
    return out


def reduction_maps() -> List[ReductionMap]:
    """The static table of reductions from raw cases to catalog families."""
    return [
        ReductionMap("B->At", "B", "beta", "mq = ynp: (b,c,d,eps) = (ynq^2, p, qy, y^2)",
                     lambda: _b_instances(False)),
        ReductionMap("Bt->A", "Bt", "alpha", "mq = ynp: (b,c,d,eps) = (ynq^2, p, qy, y^2)",
                     lambda: _b_instances(True)),
        ReductionMap("C->At", "C", "beta", "mn = ypq: (b,c,d,eps) = (n, n^2p, n^2q, y)",
                     lambda: _c_instances(False)),
        ReductionMap("Ct->A", "Ct", "alpha", "mn = ypq: (b,c,d,eps) = (n, n^2p, n^2q, y)",
                     lambda: _c_instances(True)),
        ReductionMap("D-cycle", "D", "D", "D((a,b,c),(p,q,r)) ~ D((c,a,b),(q,r,p))",
                     _d_cycle_instances, kind="elementary"),
        ReductionMap("D->eta", "D", "eta", "D((-1,-e,-e^2),(p,q,r)) = eta(p,q,r,e)",
                     _eta_instances, kind="identity"),
        ReductionMap("E->D", "E", "D", "y = -pq^2, x = y^2: D((-1,-x,-x^2),(r,q,p))",
                     lambda: _ef_instances("E", "D")),
        ReductionMap("E->theta", "E", "theta", "y = -p^2q: theta(p,q,r)",
                     lambda: _ef_instances("E", "theta"), kind="identity"),
        ReductionMap("F->D", "F", "D", "y = -pq^2, x = y^2: D((-1,-x,-x^2),(-r^2,-q^2,-p^2))",
                     lambda: _ef_instances("F", "D")),
        ReductionMap("F->theta", "F", "theta", "y = -p^2q: theta(r,q,p)",
                     lambda: _ef_instances("F", "theta")),
    ]


def check_reduction(
    rmap: ReductionMap, samples: int = 3, seed: int = DEFAULT_SEED
) -> List[CheckResult]:
    """Run decide_equiv (and the syntactic check for its kind) on sampled instances."""
    instances = rmap.instances()
    rng = random.Random(seed)
    chosen = instances if samples >= len(instances) else rng.sample(instances, samples)
    results = []
    for label, src, tgt in chosen:
        problems = []
        if rmap.kind == "identity" and src != tgt:
            problems.append("matrices differ")
        if rmap.kind == "elementary" and d_cycle(src) != tgt:
            problems.append("elementary operations do not reach the target")
        if not decide_equiv(tgt, src).equivalent:
            problems.append("not equivalent")
        results.append(CheckResult(f"{rmap.name} {label}", not problems, "; ".join(problems)))
    logger.info(
        f"Reduction {rmap.name}: {sum(r.passed for r in results)}/{len(results)} samples passed"
    )
    return results


# Fitting invariant


def fitting_key(A: PolyMat, t: int = 1) -> Tuple[str, ...]:
    """Canonical form of Fitt_t(A): the lines of its reduced Groebner basis."""
    return tuple(buchberger(fitting_ideal(A, t)).to_lines())


def find_equivalent(
    X: PolyMat, candidates: Sequence[CatalogEntry]
) -> Optional[CatalogEntry]:
    """First candidate whose presentation is equivalent to X, filtered by Fitt_1."""
    key = fitting_key(X)
    for entry in candidates:
        if entry.n != X.n or fitting_key(entry.phi) != key:
            continue
        if decide_equiv(entry.phi, X).equivalent:
            return entry
    return None


# Classification


class DisjointSet:
    """Union-find with path compression and union by rank."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, e: int) -> int:
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    def union(self, x: int, y: int) -> None:
        x_root, y_root = self.find(x), self.find(y)
        if x_root == y_root:
            return
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1

    def groups(self) -> List[List[int]]:
        """Groups ordered by their smallest element, members ascending."""
        by_root: Dict[int, List[int]] = {}
        for e in range(len(self.parent)):
            by_root.setdefault(self.find(e), []).append(e)
        return sorted(by_root.values(), key=lambda g: g[0])


def _decide_pair(pair: Tuple[PolyMat, PolyMat]) -> bool:
    return decide_equiv(pair[0], pair[1]).equivalent


def decide_pairs(pairs: Sequence[Tuple[PolyMat, PolyMat]], jobs: int = DEFAULT_JOBS) -> List[bool]:
    """decide_equiv on independent pairs, in a process pool when jobs > 1."""
    if not pairs:
        return []
    if jobs <= 1 or len(pairs) == 1:
        return [_decide_pair(p) for p in pairs]
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=init_worker_logging, initargs=(active_level(),)
    ) as pool:
        return list(pool.map(_decide_pair, pairs, chunksize=max(1, len(pairs) // (4 * jobs))))


_GROUPS = {"phi": "two", "psi": "two", "alpha": "M3", "beta": "M3", "eta": "N3", "theta": "N3"}


def _as_entries(
    entries: Sequence[Union[CatalogEntry, MatrixFactorization]]
) -> List[CatalogEntry]:
    out = []
    for k, e in enumerate(entries):
        if isinstance(e, MatrixFactorization):
            e = CatalogEntry(f"entry{k}", "custom", (), e.phi, e.psi)
        out.append(e)
    return out


def _twist_partner(entry: CatalogEntry) -> Tuple[str, AlphaParams]:
    p = AlphaParams(**entry.param_dict())
    e = p.eps
    return entry.family, AlphaParams(p.b * e, p.c * e, p.d * e, e * e)


def classify(
    entries: Sequence[Union[CatalogEntry, MatrixFactorization]],
    fast_rules: bool = True,
    exhaustive: bool = False,
    jobs: int = DEFAULT_JOBS,
    audit_sample: int = DEFAULT_AUDIT_SAMPLE,
    seed: int = DEFAULT_SEED,
) -> ClassReport:
    """
    Partition entries into isomorphism classes.

    Two-generated entries are bucketed by Fitt_1 and decided inside each
    bucket. With ``fast_rules`` the alpha/beta twist pairing supplies the
    three-generated edges and eta/theta entries stay apart, each rule
    audited by decide_equiv on ``audit_sample`` random instances;
    ``exhaustive`` decides every pairing and every eta/theta pair instead.
    Anything else is decided pair by pair.

    Raises:
        ClassificationError: If an audited rule fails
    """
    items = _as_entries(entries)
    rng = random.Random(seed)
    ds = DisjointSet(len(items))
    audits: List[CheckResult] = []
    to_decide: List[Tuple[int, int]] = []
    expect: Dict[Tuple[int, int], bool] = {}  # audited pairs and the verdict the rule predicts

    groups: Dict[str, List[int]] = {}
    for k, e in enumerate(items):
        group = _GROUPS.get(e.family, f"other{e.n}") if fast_rules else f"all{e.n}"
        if e.n == 2 and e.family in ("phi", "psi"):
            group = "two"
        groups.setdefault(group, []).append(k)

    for group, members in sorted(groups.items()):
        if group == "two" or (not fast_rules and items[members[0]].n == 2):
            buckets: Dict[Tuple[str, ...], List[int]] = {}
            for k in members:
                buckets.setdefault(fitting_key(items[k].phi), []).append(k)
            logger.debug(f"{len(members)} two-generated entries in {len(buckets)} Fitting buckets")
            for bucket in buckets.values():
                to_decide.extend(combinations(bucket, 2))
        elif group == "M3":
            index = {(items[k].family, AlphaParams(**items[k].param_dict())): k for k in members}
            edges = []
            for k in members:
                partner = index.get(_twist_partner(items[k]))
                if partner is not None and k < partner:
                    edges.append((k, partner))
            if exhaustive:
                to_decide.extend(edges)
            else:
                for x, y in edges:
                    ds.union(x, y)
                for pair in rng.sample(edges, min(audit_sample, len(edges))):
                    expect[pair] = True
        elif group == "N3":
            pairs = list(combinations(members, 2))
            if exhaustive:
                to_decide.extend(pairs)
            else:
                for pair in rng.sample(pairs, min(audit_sample, len(pairs))):
                    expect[pair] = False
        else:
            to_decide.extend(combinations(members, 2))

    if fast_rules and "M3" in groups and "N3" in groups:
        cross = list(product(groups["M3"], groups["N3"]))
        for pair in rng.sample(cross, min(audit_sample, len(cross))):
            expect[pair] = False

    audit_pairs = sorted(expect)
    all_pairs = to_decide + audit_pairs
    logger.info(f"Classifying {len(items)} entries: {len(to_decide)} decisions, {len(audit_pairs)} audits")
    verdicts = decide_pairs([(items[x].phi, items[y].phi) for x, y in all_pairs], jobs)

    for (x, y), same in zip(to_decide, verdicts):
        if same:
            ds.union(x, y)
    for (x, y), same in zip(audit_pairs, verdicts[len(to_decide):]):
        passed = same == expect[(x, y)]
        label = "equivalent" if expect[(x, y)] else "not equivalent"
        audits.append(
            CheckResult(f"{items[x].name} ~ {items[y].name}", passed, f"rule predicts {label}")
        )
        if not passed:
            raise ClassificationError(
                f"Audit failed: {items[x].name} and {items[y].name} should be {label}"
            )

    classes = []
    for cid, group_members in enumerate(ds.groups(), start=1):
        first = items[group_members[0]]
        classes.append(
            ClassInfo(
                id=cid,
                family=first.family,
                params=first.params_text(),
                members=[items[k].name for k in group_members],
                generators=first.n,
            )
        )
    report = ClassReport(classes, audits)
    logger.info(
        f"Classes: {report.two_generated_classes} two-generated, "
        f"{report.three_generated_classes} three-generated"
    )
    return report
