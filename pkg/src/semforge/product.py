"""Digraph products driven by families of labeled digraphs.

A ``LabeledFamily`` collects digraphs on vertex set [1, n] with exactly n arcs
whose arc sums i+j are the n consecutive integers [k, k+n-1] (a loop counts
once, with sum 2i); vertex names double as labels.  The arc-selected product
pairs every host arc with the arcs of the member assigned to it, and a super
edge-magic labeling of the host lifts to the product by the block formula
(a, i) -> n(f(a)-1)+i, which is re-verified at runtime rather than trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import BadAssignment, BadParam, NotSem, VerificationFailed
from .families import (
    CertifiedLabeledGraph,
    build_mixed_loop_stars,
    build_odd_copies_lk1n,
    build_two_lk11_lk1n,
    build_two_lk1m_lk1n,
    cycle_graph,
    odd_cycle_labeling,
    star_with_loop,
)
from .graphs import (
    Arc,
    Digraph,
    Graph,
    corona,
    format_digraph,
    indegree_one_orientation,
    isomorphic,
    parse_digraph,
    relabel_digraph,
    underlying,
)
from .labelings import VertexLabeling, is_sem


@dataclass(frozen=True)
class LabeledFamily:
    """All-or-some super edge-magic labeled digraphs of order and size n
    sharing minimum induced sum k, with vertex name equal to label."""

    n: int
    k: int
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        for idx, member in enumerate(members):
            _validate_member(member, self.n, self.k, idx)
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, idx: int) -> Digraph:
        return self.members[idx]


def _validate_member(member: Digraph, n: int, k: int, idx: int) -> None:
    if member.order != n:
        raise ValueError(f"member {idx} has order {member.order}, expected {n}")
    if member.size != n:
        raise ValueError(f"member {idx} has {member.size} arcs, expected {n}")
    sums = sorted(a + b for a, b in member.arcs)
    if sums != list(range(k, k + n)):
        raise ValueError(
            f"member {idx} arc sums {sums} are not the consecutive run "
            f"[{k},{k + n - 1}]"
        )


def constant_assignment(host: Digraph, member_index: int = 0) -> dict:
    return {arc: member_index for arc in host.arcs}


def otimes_h(host: Digraph, assignment: Mapping[Arc, int], family: LabeledFamily) -> Digraph:
    """Arc-selected product: ((a,i),(b,j)) is an arc iff (a,b) is a host arc
    and (i,j) an arc of the member assigned to it.

    Product vertex (a, i) is encoded as n(a-1)+i, so outputs are deterministic.
    """
    n = family.n
    missing = [arc for arc in host.sorted_arcs if arc not in assignment]
    if missing:
        raise BadAssignment(f"assignment misses host arcs {missing}")
    arcs = set()
    for a, b in host.sorted_arcs:
        idx = assignment[(a, b)]
        if not 0 <= idx < len(family.members):
            raise BadAssignment(
                f"assignment maps arc ({a},{b}) to member {idx}, "
                f"but the family has {len(family.members)} members"
            )
        member = family.members[idx]
        for i, j in member.arcs:
            arcs.add((n * (a - 1) + i, n * (b - 1) + j))
    return Digraph(host.order * n, arcs)


def kronecker(d1: Digraph, d2: Digraph) -> Digraph:
    """Kronecker (tensor) product of digraphs; no labeling checks."""
    n = d2.order
    arcs = set()
    for a, b in d1.arcs:
        for i, j in d2.arcs:
            arcs.add((n * (a - 1) + i, n * (b - 1) + j))
    return Digraph(d1.order * n, arcs)


def canonical_product_labeling(
    host: Digraph,
    host_labeling: VertexLabeling,
    family: LabeledFamily,
    assignment: Mapping[Arc, int] | None = None,
) -> VertexLabeling:
    """Lift a SEM host labeling to the product: (a, i) -> n(f(a)-1)+i.

    The output is verified against the product built with ``assignment``
    (constant to member 0 when omitted); the induced sum multiset is the same
    for every assignment into the family, so one verified product certifies
    them all.  Raises ``VerificationFailed`` if the verifier rejects.
    """
    ok, _ = is_sem(underlying(host), host_labeling)
    if not ok:
        raise NotSem("host labeling is not super edge-magic")
    if not family.members:
        raise ValueError("family has no members")
    if assignment is None:
        assignment = constant_assignment(host)
    product = otimes_h(host, assignment, family)
    n = family.n
    labels = [0] * product.order
    for a in range(1, host.order + 1):
        base = n * (host_labeling.of(a) - 1)
        for i in range(1, n + 1):
            labels[n * (a - 1) + i - 1] = base + i
    labeling = VertexLabeling(tuple(labels))
    ok, _ = is_sem(underlying(product), labeling)
    if not ok:
        raise VerificationFailed(
            "block labeling of the product failed the SEM verifier"
        )
    return labeling


def corona_iso_check(k: int, n: int, *, node_budget: int | None = None) -> bool:
    """Is the product of an oriented k-cycle with an oriented n-leaf loop-star
    isomorphic (after forgetting orientation) to the corona of the cycle?"""
    host = indegree_one_orientation(cycle_graph(k))
    member = indegree_one_orientation(star_with_loop(n))
    family = LabeledFamily(n + 1, 2, (member,))
    product = underlying(otimes_h(host, constant_assignment(host), family))
    kwargs = {} if node_budget is None else {"node_budget": node_budget}
    return isomorphic(product, corona(cycle_graph(k), n), **kwargs)


_CORONA_UNION_VARIANTS = {
    "i": (("n",), lambda p: build_two_lk11_lk1n(p["n"])),
    "ii": (("m", "n"), lambda p: build_two_lk1m_lk1n(p["m"], p["n"])),
    "iii": (("s", "n"), lambda p: build_odd_copies_lk1n(p["s"], p["n"])),
    "iv": (("m", "n", "s"), lambda p: build_mixed_loop_stars(p["m"], p["n"], p["s"])),
}


def corona_union_via_product(variant: str, **params):
    """Corona unions via the product of an oriented cycle with a certified family.

    Builds the product of the oriented k-cycle with the single-member family
    drawn from the matching certified constructor.  For odd k the cycle is SEM
    and the block labeling is attached (verified); for even k the graph is
    returned with no labeling.  Returns ``(graph, labeling_or_None)``.
    """
    if variant not in _CORONA_UNION_VARIANTS:
        raise BadParam(f"unknown variant {variant!r}; expected one of i, ii, iii, iv")
    arg_names, builder = _CORONA_UNION_VARIANTS[variant]
    if "k" not in params:
        raise BadParam("corona union build needs the cycle length k")
    missing = [a for a in arg_names if a not in params]
    if missing:
        raise BadParam(f"variant {variant} needs parameters {', '.join(arg_names)}")
    k = params["k"]
    if k < 3:
        raise BadParam(f"cycle length must be at least 3, got {k}")
    cert: CertifiedLabeledGraph = builder(params)
    member = relabel_digraph(indegree_one_orientation(cert.graph), cert.labeling)
    family = LabeledFamily(cert.graph.order, cert.window.s_min, (member,))
    host = indegree_one_orientation(cycle_graph(k))
    assignment = constant_assignment(host)
    product = otimes_h(host, assignment, family)
    if k % 2 == 1:
        labeling = canonical_product_labeling(
            host, odd_cycle_labeling(k), family, assignment
        )
        return underlying(product), labeling
    return underlying(product), None


# --- family directory format ----------------------------------------------------
#
# A family lives in a directory holding one digraph edge-list file per member
# plus family.json: {"n": int, "k": int, "members": [filename, ...]}.
# Assignment files pair host arcs with 0-based member indices, one
# "a b member_index" line per arc.


def save_family(family: LabeledFamily, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for i, member in enumerate(family.members):
        name = f"member{i:03d}.txt"
        (directory / name).write_text(format_digraph(member))
        names.append(name)
    meta = {"n": family.n, "k": family.k, "members": names}
    (directory / "family.json").write_text(json.dumps(meta, indent=2) + "\n")
    return directory


def load_family(directory: str | Path) -> LabeledFamily:
    directory = Path(directory)
    meta = json.loads((directory / "family.json").read_text())
    members = tuple(
        parse_digraph((directory / name).read_text()) for name in meta["members"]
    )
    return LabeledFamily(meta["n"], meta["k"], members)


def parse_assignment(text: str) -> dict:
    assignment = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"malformed assignment line: {raw!r}")
        a, b, idx = (int(x) for x in parts)
        assignment[(a, b)] = idx
    return assignment


def format_assignment(assignment: Mapping[Arc, int]) -> str:
    lines = [f"{a} {b} {idx}" for (a, b), idx in sorted(assignment.items())]
    return "\n".join(lines) + "\n"
