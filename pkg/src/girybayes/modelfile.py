"""Reading model and kernel files, writing reports.

Files are YAML.  Rationals are written ``a/b`` or ``a`` and are read from
the raw scalar text, so nothing passes through a float.  Parsing works on
the composed node tree rather than on loaded Python objects, which keeps a
line number available for every complaint.

A model file::

    spaces:
      X: [x1, x2, x3]       # hidden space, listed first
      Y: [a, b]             # observed space, listed second
    prior: {x1: 1/2, x2: 1/4, x3: 1/4}
    likelihood:
      map: {x1: a, x2: a, x3: b}

or, for a general likelihood, ``kernel:`` mapping each hidden point to a
row (a mapping or a list in observed-space order).

A candidate file is any document with a ``joint_kernel`` section (rows of
``[x, y, weight]`` triples, omitted entries are zero) or a ``posterior``
section; reports written by :func:`dump_report` qualify.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import yaml

from .giry import Kernel, Map
from .inference import (
    BayesModel, DeterministicModel, InferenceResult, joint_kernel_from_posterior,
)
from .measure import Dist, MeasureError, Space, format_rat, parse_rat, product

__all__ = ["InputError", "load_model", "load_candidate", "parse_model",
           "parse_candidate", "report_data", "dump_report"]


class InputError(ValueError):
    def __init__(self, message: str, source: str = "<input>", mark=None):
        self.message = message
        self.source = source
        self.line = None if mark is None else mark.line + 1
        self.column = None if mark is None else mark.column + 1
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return f"{self.source}: {self.message}"
        return f"{self.source}:{self.line}:{self.column}: {self.message}"


class _Reader:
    def __init__(self, text: str, source: str):
        self.source = source
        try:
            self.root = yaml.compose(text, Loader=yaml.SafeLoader)
        except yaml.MarkedYAMLError as exc:
            raise InputError(f"YAML syntax error: {exc.problem}", source,
                             exc.problem_mark) from None
        if self.root is None:
            raise InputError("empty document", source)

    def fail(self, node, message):
        raise InputError(message, self.source, None if node is None else node.start_mark)

    def mapping(self, node, what) -> list:
        if not isinstance(node, yaml.MappingNode):
            self.fail(node, f"{what} must be a mapping")
        seen, out = set(), []
        for k, v in node.value:
            key = self.scalar(k, f"key in {what}")
            if key in seen:
                self.fail(k, f"duplicate key {key!r} in {what}")
            seen.add(key)
            out.append((key, k, v))
        return out

    def seq(self, node, what) -> list:
        if not isinstance(node, yaml.SequenceNode):
            self.fail(node, f"{what} must be a list")
        return node.value

    def scalar(self, node, what) -> str:
        if not isinstance(node, yaml.ScalarNode):
            self.fail(node, f"{what} must be a plain value")
        return node.value

    def rat(self, node, what) -> Fraction:
        text = self.scalar(node, what)
        try:
            return parse_rat(text)
        except ValueError as exc:
            self.fail(node, f"{what}: {exc}")

    def point(self, node, space: Space, what) -> str:
        p = self.scalar(node, what)
        if p not in space:
            self.fail(node, f"{what}: {p!r} is not a declared point of {space.label}")
        return p

    def weights(self, node, space: Space, what) -> Dist:
        """A distribution given as a mapping or a list in point order."""
        if isinstance(node, yaml.SequenceNode):
            items = node.value
            if len(items) != len(space):
                self.fail(node, f"{what} lists {len(items)} weights for {len(space)} points")
            ws = [self.rat(n, what) for n in items]
        else:
            ws = [Fraction(0)] * len(space)
            for key, k, v in self.mapping(node, what):
                ws[space.index(self.point(k, space, what))] = self.rat(v, what)
        try:
            return Dist(space, ws)
        except MeasureError as exc:
            self.fail(node, f"{what}: {exc}")

    def section(self, top, name):
        for key, k, v in top:
            if key == name:
                return k, v
        return None, None


def _spaces(r: _Reader, top) -> tuple[Space, Space]:
    _, node = r.section(top, "spaces")
    if node is None:
        r.fail(r.root, "missing 'spaces'")
    entries = r.mapping(node, "spaces")
    if len(entries) != 2:
        r.fail(node, "spaces must declare exactly two spaces: hidden first, observed second")
    out = []
    for name, k, v in entries:
        pts = [r.scalar(n, f"point of {name}") for n in r.seq(v, f"space {name}")]
        if not pts:
            r.fail(v, f"space {name} has no points")
        if len(set(pts)) != len(pts):
            r.fail(v, f"space {name} repeats a point")
        out.append(Space(name, tuple(pts)))
    return out[0], out[1]


def parse_model(text: str, source: str = "<model>"):
    r = _Reader(text, source)
    top = r.mapping(r.root, "model file")
    for key, k, _ in top:
        if key not in ("spaces", "prior", "likelihood", "description"):
            r.fail(k, f"unknown key {key!r}")
    X, Y = _spaces(r, top)
    _, pnode = r.section(top, "prior")
    if pnode is None:
        r.fail(r.root, "missing 'prior'")
    prior = r.weights(pnode, X, "prior")
    _, lnode = r.section(top, "likelihood")
    if lnode is None:
        r.fail(r.root, "missing 'likelihood'")
    kinds = r.mapping(lnode, "likelihood")
    if len(kinds) != 1 or kinds[0][0] not in ("map", "kernel"):
        r.fail(lnode, "likelihood must have exactly one of 'map' or 'kernel'")
    kind, _, body = kinds[0]
    table = {}
    for key, k, v in r.mapping(body, f"likelihood {kind}"):
        x = r.point(k, X, f"likelihood {kind}")
        if kind == "map":
            table[x] = r.point(v, Y, f"image of {x}")
        else:
            table[x] = r.weights(v, Y, f"likelihood row {x}")
    missing = [x for x in X.points if x not in table]
    if missing:
        r.fail(body, f"likelihood {kind} has no entry for {missing[0]!r}")
    if kind == "map":
        return DeterministicModel(prior, Map.from_mapping(X, Y, table))
    return BayesModel(prior, Kernel(X, Y, tuple(table[x] for x in X.points)))


def load_model(path):
    return parse_model(_read(path), str(path))


def parse_candidate(text: str, model, source: str = "<candidate>") -> Kernel:
    """Read a kernel ``Y -> X x Y`` for ``model`` from a candidate document."""
    r = _Reader(text, source)
    top = r.mapping(r.root, "candidate file")
    X, Y = model.X, model.Y
    XY = product(X, Y)
    _, snode = r.section(top, "spaces")
    if snode is not None:
        CX, CY = _spaces(r, top)
        if (CX.points, CY.points) != (X.points, Y.points):
            r.fail(snode, "candidate spaces differ from the model's spaces")
    _, jnode = r.section(top, "joint_kernel")
    _, pnode = r.section(top, "posterior")
    if jnode is None and pnode is None:
        r.fail(r.root, "candidate needs a 'joint_kernel' or 'posterior' section")
    rows = {}
    if jnode is not None:
        for key, k, v in r.mapping(jnode, "joint_kernel"):
            y = r.point(k, Y, "joint_kernel")
            ws = [Fraction(0)] * len(XY)
            seen = set()
            for entry in r.seq(v, f"joint_kernel row {y}"):
                triple = r.seq(entry, f"joint_kernel row {y} entry")
                if len(triple) != 3:
                    r.fail(entry, "joint_kernel entries are [x, y, weight]")
                pair = (r.point(triple[0], X, "entry"), r.point(triple[1], Y, "entry"))
                if pair in seen:
                    r.fail(entry, f"duplicate entry for {pair}")
                seen.add(pair)
                ws[XY.index(pair)] = r.rat(triple[2], "entry weight")
            try:
                rows[y] = Dist(XY, ws)
            except MeasureError as exc:
                r.fail(v, f"joint_kernel row {y}: {exc}")
        node, kernel_target = jnode, XY
    else:
        for key, k, v in r.mapping(pnode, "posterior"):
            y = r.point(k, Y, "posterior")
            rows[y] = r.weights(v, X, f"posterior row {y}")
        node, kernel_target = pnode, X
    missing = [y for y in Y.points if y not in rows]
    if missing:
        r.fail(node, f"no row for {missing[0]!r}")
    kernel = Kernel(Y, kernel_target, tuple(rows[y] for y in Y.points))
    return kernel if jnode is not None else joint_kernel_from_posterior(kernel)


def load_candidate(path, model) -> Kernel:
    return parse_candidate(_read(path), model, str(path))


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(path)) from None


def _rat(q: Fraction):
    # integers stay bare YAML ints; everything else is an "a/b" string
    return q.numerator if q.denominator == 1 else format_rat(q)


def _sparse(P: Dist) -> list:
    return [[str(x), str(y), _rat(w)] for (x, y), w in P.items() if w]


def _dense(P: Dist) -> dict:
    return {str(p): _rat(w) for p, w in P.items()}


def report_data(result: InferenceResult) -> dict:
    X, Y = result.posterior.target, result.posterior.source
    data = {
        "method": result.method,
        "spaces": {X.label: [str(p) for p in X.points], Y.label: [str(p) for p in Y.points]},
        "joint": _sparse(result.joint),
        "marginal_y": _dense(result.marginal_y),
        "V": [str(y) for y in result.V.sorted()],
    }
    if result.alpha is not None:
        data["alpha"] = {str(y): _rat(a) for y, a in result.alpha.items()}
    data["posterior"] = {str(y): _dense(row) for y, row in result.posterior.items()}
    data["joint_kernel"] = {str(y): _sparse(row) for y, row in result.joint_kernel.items()}
    return data


def _dump(data: dict) -> str:
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True,
                          default_flow_style=None, width=100)


def dump_report(result: InferenceResult) -> str:
    """Serialize a result.  The kernel sections come last, so the text from
    ``posterior:`` onwards depends only on the kernels."""
    data = report_data(result)
    kernel_keys = ("posterior", "joint_kernel")
    head = {k: v for k, v in data.items() if k not in kernel_keys}
    tail = {k: data[k] for k in kernel_keys}
    return _dump(head) + _dump(tail)
