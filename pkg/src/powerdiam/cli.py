"""Command-line front end.

Group specs: ``S<n>``, ``D<n>``, ``A<n>``, ``Z<m>``, products ``Z<m1>xZ<m2>x...``
and ``file:<path>`` (a generator fixture). Output is JSON with sorted keys
unless ``--format text`` is given. Exit status: 0 on success, 2 when a
counterexample is reported, 1 on any error.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from ._version import __version__
from .bounds import (
    abelian_diameter,
    canonical_bound,
    general_upper_bound,
    report,
    sn_diameter_bound,
    strong_conjecture_bound,
    wiegold_threshold,
)
from .conjecture import check_strong, check_weak
from .diameter import diam, express, length_table, write_csv
from .errors import ParseError, ResourceLimitError
from .families import dihedral_power_express, dn_generators, sn_express, sn_generators
from .group import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_SUBSETS,
    GenSet,
    abelian_invariants,
    closure,
    commutator_subgroup,
    is_perfect,
    is_solvable,
    minimum_generating_set,
    quotient,
    rank,
)
from .perm import Permutation, format_cycles, parse_cycles
from .power import canonical_genset, coprime_genset, direct_power, power_rank

EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2


# -- group specs ----------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    text: str
    kind: str  # "S", "D", "A", "Z" or "file"
    params: tuple = ()  # n for S/D/A, the cyclic orders for Z
    path: str = ""


_NUMBER = re.compile(r"[0-9]+")


def parse_group_spec(text):
    if text.startswith("file:"):
        if len(text) == 5:
            raise ParseError("missing fixture path", text, 5)
        return GroupSpec(text, "file", path=text[5:])
    if not text:
        raise ParseError("empty group spec", text, 0)
    kind = text[0]
    if kind not in "SDAZ":
        raise ParseError(f"unknown group family {kind!r}; expected S, D, A, Z or file:", text, 0)
    params, pos = [], 1
    while True:
        m = _NUMBER.match(text, pos)
        if m is None:
            raise ParseError("expected a number", text, pos)
        params.append(int(m.group()))
        pos = m.end()
        if pos == len(text):
            break
        if kind != "Z" or not text.startswith("xZ", pos):
            raise ParseError("unexpected trailing characters", text, pos)
        pos += 2
    for value in params:
        if value < 1:
            raise ParseError("group parameters must be positive", text, 1)
    return GroupSpec(text, kind, tuple(params))


def read_fixture(path):
    """(degree, [Permutation]) from a fixture: ``degree <d>`` then one generator per line."""
    degree, gens = None, []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+([0-9]+)", line)
            if m is None or int(m.group(1)) < 1:
                raise ParseError(f"{path}:{lineno}: expected 'degree <d>'", line, 0)
            degree = int(m.group(1))
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}", line) from None
    if degree is None:
        raise ParseError(f"{path}: missing 'degree <d>' line", "", 0)
    return degree, gens


def _cyclic(orders, max_states):
    degree = sum(orders)
    gens, offset = [], 0
    for m in orders:
        if m > 1:
            gens.append(Permutation.from_cycles([range(offset + 1, offset + m + 1)], degree))
        offset += m
    name = "x".join(f"Z{m}" for m in orders)
    G = closure(gens or [Permutation.identity(degree)], max_elements=max_states, name=name)
    labels = ["z"] if len(gens) == 1 else [f"z{i + 1}" for i in range(len(gens))]
    return G, GenSet.build(G, [G.index_of(g) for g in gens], labels, name="A")


def resolve(spec, max_states=DEFAULT_MAX_ELEMENTS):
    """(group, default generating set) for a parsed spec."""
    if spec.kind == "file":
        degree, gens = read_fixture(spec.path)
        G = closure(gens or [Permutation.identity(degree)], max_elements=max_states, name=spec.text)
        labels = [f"x{i + 1}" for i in range(len(gens))]
        return G, GenSet.build(G, [G.index_of(g) for g in gens], labels, name="A")
    if spec.kind == "Z":
        return _cyclic(spec.params, max_states)
    (n,) = spec.params
    if spec.kind == "S":
        if n >= 3:
            A = sn_generators(n)
            return A.group, A
        if n == 2:
            G, A = _cyclic((2,), max_states)
            G.name = "S2"
            return G, A
        G = closure([Permutation.identity(1)], name="S1")
        return G, GenSet.build(G, [], [], name="A")
    if spec.kind == "D":
        if n < 3:
            raise ParseError("D<n> needs n >= 3", spec.text, 1)
        A = dn_generators(n)
        return A.group, A
    if n < 3:
        raise ParseError("A<n> needs n >= 3", spec.text, 1)
    gens = [Permutation.from_cycles([(1, 2, i)], n) for i in range(3, n + 1)]
    G = closure(gens, max_elements=max_states, name=f"A{n}")
    labels = [f"c{i}" for i in range(3, n + 1)]
    return G, GenSet.build(G, [G.index_of(g) for g in gens], labels, name="A")


def load_genset(G, text):
    """Generators of G read from a fixture file named by ``file:<path>``."""
    if not text.startswith("file:"):
        raise ParseError("expected 'default' or 'file:<path>'", text, 0)
    degree, gens = read_fixture(text[5:])
    if degree != G.degree:
        raise ValueError(f"generator file has degree {degree}, {G.name} has degree {G.degree}")
    members = [G.index_of(g) for g in gens]
    return GenSet.build(G, members, [format_cycles(g) for g in gens], name="X")


def parse_element(G, text, n=1):
    """An element of G (cycle notation) or of G^n (a tuple of cycle strings)."""
    if n == 1:
        return G.index_of(parse_cycles(text, G.degree))
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError("power elements are written as a tuple '((...), (...))'", text, 0)
    parts, depth, start = [], 0, 1
    for pos, ch in enumerate(body[1:-1], start=1):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:pos])
            start = pos + 1
    parts.append(body[start:-1])
    if len(parts) != n:
        raise ParseError(f"expected {n} coordinates, got {len(parts)}", text, 0)
    P = direct_power(G, n)
    return P.index_of([parse_element(G, p, 1) for p in parts])


# -- commands --------------------------------------------------------------------

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _power_genset(base, n, which, max_states):
    P = direct_power(base.group, n, max_elements=max_states)
    if which == "canonical":
        return canonical_genset(base, n, power=P)
    if which == "coprime":
        return coprime_genset(base, n, power=P)
    raise ValueError(f"unknown power generating set {which!r}")


def _target_genset(args, G, A):
    n = getattr(args, "n", None) or 1
    if n == 1:
        return A
    return _power_genset(A, n, args.genset or "canonical", args.max_states)


def cmd_diam(args, G, A):
    if args.genset not in (None, "default"):
        A = load_genset(G, args.genset)
    return {"group": G.name, "order": G.order, "genset": A.describe(),
            "diam": diam(A, args.max_states)}


def cmd_rank(args, G, A):
    if args.power:
        pr = power_rank(G, args.power, max_subsets=args.max_subsets, max_elements=args.max_states)
        out = {"group": G.name, "power": args.power, "rank": pr.value}
        out.update({k: v for k, v in pr.to_dict().items() if k != "value"})
        return out
    members = minimum_generating_set(G, max_subsets=args.max_subsets)
    return {"group": G.name, "order": G.order, "rank": len(members),
            "generating_set": [G.format_element(m) for m in members]}


def cmd_express(args, G, A):
    n = args.n or 1
    if args.method == "family":
        spec = args.spec_parsed
        if spec.kind == "S" and n == 1 and spec.params[0] >= 3:
            word = sn_express(G.element(parse_element(G, args.element)), spec.params[0])
            labels = A.labels
        elif spec.kind == "D" and n >= 2 and spec.params[0] % 2 == 1:
            x = parse_element(G, args.element, n)
            word = dihedral_power_express(x, spec.params[0], n)
            labels = [f"g{i + 1}" for i in range(n)]
        else:
            raise ValueError("family words exist for S<n> (n >= 3) and for D<n>^k with n odd, k >= 2")
        return {"group": G.name if n == 1 else f"{G.name}^{n}", "element": args.element,
                "method": "family", "length": len(word), "word": word.format(labels, compress=True)}
    genset = _target_genset(args, G, A)
    table = length_table(genset, args.max_states)
    x = parse_element(G, args.element, n)
    word = express(table, x)
    return {"group": genset.group.name, "element": args.element, "method": "bfs",
            "genset": genset.describe(), "length": len(word), "word": word.format(genset.labels)}


def cmd_power_diam(args, G, A):
    genset = _power_genset(A, args.n, args.genset, args.max_states)
    diam_g = diam(A, args.max_states)
    return {"group": genset.group.name, "order": genset.group.order, "genset": genset.name,
            "size": len(genset.members), "diam": diam(genset, args.max_states),
            "diam_base": diam_g}


def cmd_bounds(args, G, A):
    n = args.n
    alpha = rank(G, max_subsets=args.max_subsets)
    diam_g = diam(A, args.max_states)
    reports = [
        report("general_upper_bound", general_upper_bound(G.order, alpha), order=G.order, rank=alpha),
        report("strong_conjecture_bound", strong_conjecture_bound(G.order, alpha, n),
               order=G.order, rank=alpha, n=n),
        report("canonical_bound", canonical_bound(diam_g, n), diam_g=diam_g, n=n),
    ]
    spec = args.spec_parsed
    if spec.kind == "S" and spec.params[0] >= 3:
        m = spec.params[0]
        reports.append(report("sn_diameter_bound", sn_diameter_bound(m), n=m, variant=A.name))
    if G.is_abelian() and G.order > 1:
        inv = abelian_invariants(G)
        reports.append(report("abelian_diameter", abelian_diameter(inv), invariants=list(inv.invariants)))
    if G.order > 1:
        q = quotient(G, commutator_subgroup(G))
        beta = rank(q, max_subsets=args.max_subsets) if q.order > 1 else 0
        if beta >= 2 and not is_perfect(G):
            reports.append(report("wiegold_threshold", wiegold_threshold(alpha, beta, "imperfect"),
                                  alpha=alpha, beta=beta, family="imperfect"))
        if beta >= 1 and is_solvable(G):
            reports.append(report("wiegold_threshold", wiegold_threshold(alpha, beta, "solvable"),
                                  alpha=alpha, beta=beta, family="solvable"))
    return {"group": G.name, "n": n, "bounds": [r.to_dict() for r in reports]}


def cmd_check_weak(args, G, A):
    spec = args.spec_parsed
    odd_dihedral = spec.params[0] if spec.kind == "D" and spec.params[0] % 2 == 1 else None
    return check_weak(G, args.n, strategy=args.strategy, genset=A, group_spec=spec.text,
                      dihedral_odd=odd_dihedral, max_states=args.max_states,
                      max_subsets=args.max_subsets, workers=args.threads)


def cmd_check_strong(args, G, A):
    mode = "sampled" if args.samples else "exhaustive"
    return check_strong(G, args.n, mode=mode, count=args.samples or 0, seed=args.seed,
                        group_spec=args.spec_parsed.text, max_states=args.max_states,
                        max_subsets=args.max_subsets, workers=args.threads)


def cmd_table(args, G, A):
    genset = _target_genset(args, G, A)
    table = length_table(genset, args.max_states)
    with open(args.out, "w", newline="") as fh:
        write_csv(table, fh)
    return {"group": genset.group.name, "genset": genset.describe(), "rows": genset.group.order,
            "diam": table.diameter, "out": args.out}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-states", type=int, default=DEFAULT_MAX_ELEMENTS,
                        help="cap on group elements enumerated or visited by BFS")
    common.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS,
                        help="cap on candidate subsets in rank and generating-set searches")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for batches of BFS runs (results do not depend on it)")

    parser = _Parser(prog="powerdiam", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("spec", help="group spec, e.g. S4, D5, Z12xZ2, file:gens.txt")
        p.set_defaults(func=func)
        return p

    p = add("diam", cmd_diam, "diameter for the default or a given generating set")
    p.add_argument("--genset", default="default", help="default or file:<path>")
    p = add("rank", cmd_rank, "rank of G, or of G^n with --power n")
    p.add_argument("--power", type=int)
    p = add("express", cmd_express, "a word for one element")
    p.add_argument("--element", required=True)
    p.add_argument("--method", choices=("bfs", "family"), default="bfs")
    p.add_argument("--n", type=int, help="work in G^n")
    p.add_argument("--genset", choices=("canonical", "coprime"))
    p = add("power-diam", cmd_power_diam, "diameter of G^n for a product generating set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--genset", choices=("canonical", "coprime"), required=True)
    p = add("bounds", cmd_bounds, "closed-form bounds for G and G^n")
    p.add_argument("--n", type=int, required=True)
    p = add("check-weak", cmd_check_weak, "weak-form check for G^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=("auto", "canonical", "coprime", "search"), default="auto")
    p = add("check-strong", cmd_check_strong, "strong-form check for G^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, help="sample this many generating sets instead of enumerating")
    p.add_argument("--seed", type=int, default=0)
    p = add("table", cmd_table, "write the word-length table as CSV")
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--genset", choices=("canonical", "coprime"))
    return parser


def _render(result, fmt):
    if hasattr(result, "to_dict"):
        return result.to_json() if fmt == "json" else result.to_text()
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2)
    return "\n".join(f"{k}: {result[k]}" for k in sorted(result))


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.spec_parsed = parse_group_spec(args.spec)
        G, A = resolve(args.spec_parsed, args.max_states)
        result = args.func(args, G, A)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_ERROR
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR
    print(_render(result, args.format), file=stdout)
    verdict = getattr(result, "verdict", None)
    return EXIT_COUNTEREXAMPLE if verdict == "COUNTEREXAMPLE" else EXIT_OK


def main():
    sys.exit(run())
