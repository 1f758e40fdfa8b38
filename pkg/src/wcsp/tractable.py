"""Polynomial-time evaluators for the two tractable families.

Product-type instances reduce to parity-tagged variable classes: every
constraint contributes unary weight pairs and equality/complement ties, so the
partition function is a product of per-class sums.  Pure-affine instances
reduce to a weight product times a GF(2) solution count.
"""

from __future__ import annotations

from fractions import Fraction

from .classify import (
    FamilyVerdict,
    ProductWitness,
    classify_family,
    is_product_type,
    is_pure_affine,
    underlying_relation,
)
from .errors import Refusal
from .gf2 import Gf2System, affine_system_of, count_solutions
from .model import Instance, brute_force_z

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ParityUnionFind:
    """Union-find over variables carrying a parity offset toward the root.

    Uniting two variables with parity 1 declares them complementary; a cycle
    whose parities contradict marks the class annihilated rather than raising.
    """

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.rank = [0] * size
        self.offset = [0] * size  # parity relative to the parent link
        self.dead = [False] * size  # meaningful at roots only

    def find(self, v: int) -> tuple[int, int]:
        """Return (root, parity of v relative to the root), compressing paths."""
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        parity = 0
        for node in reversed(path):
            parity ^= self.offset[node]
            self.parent[node] = root
            self.offset[node] = parity
        if path:
            return root, self.offset[path[0]]
        return root, 0

    def union(self, u: int, v: int, parity: int) -> None:
        root_u, parity_u = self.find(u)
        root_v, parity_v = self.find(v)
        if root_u == root_v:
            if parity_u ^ parity_v != parity:
                self.dead[root_u] = True
            return
        if self.rank[root_u] < self.rank[root_v]:
            root_u, root_v = root_v, root_u
            parity_u, parity_v = parity_v, parity_u
        self.parent[root_v] = root_u
        self.offset[root_v] = parity_u ^ parity_v ^ parity
        self.dead[root_u] = self.dead[root_u] or self.dead[root_v]
        if self.rank[root_u] == self.rank[root_v]:
            self.rank[root_u] += 1


def eval_product_type(
    instance: Instance, witnesses: dict[str, ProductWitness] | None = None
) -> Fraction:
    """Exact partition function of an all-product-type instance, near-linear time.

    Refuses (pointing at the brute-force oracle) when some catalog function is
    not product type.  Witnesses may be passed in to skip re-classification.
    """
    if instance.domain_size != 2:
        raise Refusal("the product-type evaluator handles domain size 2 only")
    if witnesses is None:
        witnesses = {}
        for name, fn in instance.functions.items():
            ok, witness = is_product_type(fn)
            if not ok:
                raise Refusal(
                    f"function {name!r} is not product type; "
                    "evaluate with the brute-force oracle instead"
                )
            witnesses[name] = witness

    n = instance.num_variables
    union = ParityUnionFind(n)
    weight0 = [_ONE] * n  # per-variable factor when the variable is 0
    weight1 = [_ONE] * n
    scale = _ONE
    for c in instance.constraints:
        witness = witnesses[c.function]
        if witness.scale == 0:
            return _ZERO  # a zero function annihilates every assignment
        scale *= witness.scale
        for col, val in witness.constant_columns:
            v = c.scope[col]
            if val == 0:
                weight1[v] = _ZERO
            else:
                weight0[v] = _ZERO
        for cls in witness.classes:
            rep_var = c.scope[cls.members[0][0]]
            if cls.weights[0] != 1:
                weight0[rep_var] = weight0[rep_var] * cls.weights[0]
            if cls.weights[1] != 1:
                weight1[rep_var] = weight1[rep_var] * cls.weights[1]
            for col, complemented in cls.members[1:]:
                union.union(rep_var, c.scope[col], 1 if complemented else 0)

    zero_sum: dict[int, Fraction] = {}  # root -> product over class, root at 0
    one_sum: dict[int, Fraction] = {}
    for v in range(n):
        root, parity = union.find(v)
        if parity == 0:
            low, high = weight0[v], weight1[v]
        else:
            low, high = weight1[v], weight0[v]
        zero_sum[root] = zero_sum.get(root, _ONE) * low
        one_sum[root] = one_sum.get(root, _ONE) * high

    result = scale
    for root, low in zero_sum.items():
        if union.dead[root]:
            return _ZERO  # contradictory parities force both class sums to 0
        result *= low + one_sum[root]
    return result


def eval_pure_affine(instance: Instance) -> Fraction:
    """Exact partition function of an all-pure-affine instance.

    The value is the product of each constraint's non-zero level times the
    GF(2) solution count of the accumulated support systems.
    """
    if instance.domain_size != 2:
        raise Refusal("the pure-affine evaluator handles domain size 2 only")
    levels: dict[str, Fraction] = {}
    systems: dict[str, Gf2System] = {}
    for name, fn in instance.functions.items():
        if not is_pure_affine(fn):
            raise Refusal(
                f"function {name!r} is not pure affine; "
                "evaluate with the brute-force oracle instead"
            )
        levels[name] = fn.table[fn.support_indices()[0]]
        systems[name] = affine_system_of(underlying_relation(fn))

    rows: list[tuple[int, int]] = []
    scale = _ONE
    for c in instance.constraints:
        scale *= levels[c.function]
        arity = len(c.scope)
        for mask, constant in systems[c.function].rows:
            var_mask = 0
            for pos in range(arity):
                if mask >> pos & 1:
                    var_mask ^= 1 << c.scope[pos]
            rows.append((var_mask, constant))
    count = count_solutions(Gf2System(instance.num_variables, tuple(rows)))
    return scale * count


def evaluate(
    instance: Instance, budget: int | None = None, force_oracle: bool = False
) -> tuple[Fraction, str]:
    """Evaluate by the classification-selected route.

    Returns the value and the evaluator used: ``product-type``,
    ``pure-affine``, or ``brute-force``.  Hard families fall back to the
    enumeration oracle, which refuses beyond its budget.
    """
    if not force_oracle and instance.domain_size == 2:
        verdict = classify_family(instance.functions)
        if verdict.family is FamilyVerdict.PRODUCT_TYPE_FP:
            witnesses = {
                name: report.witness for name, report in verdict.per_function.items()
            }
            return eval_product_type(instance, witnesses), "product-type"
        if verdict.family is FamilyVerdict.PURE_AFFINE_FP:
            return eval_pure_affine(instance), "pure-affine"
    return brute_force_z(instance, budget), "brute-force"
