"""Manifest parsing and printing.

A manifest is a single UTF-8 file of named blocks:

    [ring]
    n = 2

    [module M]
    twists = [0, -1]
    relations = [["x0", "0"], ["x1^2", "x2"]]

    [complex C]
    degrees = 0..1
    term 0 = M
    term 1 = O(1)
    map 0 = [["x0"]]
    generators 0 = [S(1)]

    [task resolve]
    module = M

Relations and map matrices are column-major: each inner list is the image of
one source generator, entries running down the target rows.  Module
references resolve against declared names first, then the built-ins O(a),
Omega1 and S(k).  Parsing is eager: every polynomial, twist and reference is
validated up front with a line diagnostic, and complexes are checked to
square to zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .complexes import BoundedComplex
from .errors import BraneGaugeError, ManifestError
from .modules import GradedMap, GradedModule
from .polymatrix import PolyMatrix
from .polynomials import Polynomial, parse_polynomial
from .projective import ProjectiveSpace, cotangent_sheaf, generator

_BLOCK_RE = re.compile(r"^\[([a-z-]+)(?:\s+([A-Za-z_][\w.()-]*))?\]$")
_KEY_RE = re.compile(r"^([a-z][a-z-]*)(?:\s+(-?\d+))?\s*=\s*(.*)$")
_BUILTIN_RE = re.compile(r"^(O|S)\((-?\d+)\)$")

TASK_KINDS = (
    "resolve", "shift", "cone", "hom-complex", "triangle-from-ses",
    "generators", "disjointness", "sheaf-hom", "cech", "lem1-check",
    "atiyah", "gauge-bound", "quasi-iso", "annihilator",
)

# required / optional plain parameters per task kind; matrices live under
# the "matrix" key or per-degree "level N" keys and are checked separately
_TASK_PARAMS = {
    "resolve": (("module",), ("max-length",)),
    "shift": (("complex", "k"), ()),
    "cone": (("source", "target"), ()),
    "hom-complex": (("source", "target"), ("oracle",)),
    "triangle-from-ses": (("source", "target"), ()),
    "generators": ((), ()),
    "disjointness": (("i", "j"), ()),
    "sheaf-hom": (("source", "target"), ()),
    "cech": (("module", "i"), ()),
    "lem1-check": ((), ()),
    "atiyah": (("a",), ()),
    "gauge-bound": (("complex",), ("brane-id",)),
    "quasi-iso": (("source", "target"), ()),
    "annihilator": (("module",), ()),
}

_MODULE_REF_PARAMS = {
    "resolve": ("module",),
    "triangle-from-ses": ("source", "target"),
    "sheaf-hom": ("source", "target"),
    "cech": ("module",),
    "annihilator": ("module",),
}
_COMPLEX_REF_PARAMS = {
    "shift": ("complex",),
    "cone": ("source", "target"),
    "hom-complex": ("source", "target"),
    "gauge-bound": ("complex",),
    "quasi-iso": ("source", "target"),
}
_INT_PARAMS = {
    "resolve": ("max-length",),
    "shift": ("k",),
    "disjointness": ("i", "j"),
    "cech": ("i",),
    "atiyah": ("a",),
}


@dataclass
class TaskDef:
    kind: str
    index: int
    line: int
    params: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)  # "matrix" or ("level", i)


@dataclass
class Manifest:
    n: int
    space: ProjectiveSpace
    modules: dict  # name -> GradedModule
    module_columns: dict  # name -> (twists, list of column string lists)
    complexes: dict  # name -> BoundedComplex
    complex_layout: dict  # name -> dict with degrees/terms/maps/generators
    tasks: list

    def resolve_module(self, ref: str, line: int | None = None) -> GradedModule:
        return resolve_module_ref(ref, self.space, self.modules, line)


def resolve_module_ref(ref: str, space: ProjectiveSpace, named: dict,
                       line: int | None = None) -> GradedModule:
    """A module reference: declared name or built-in O(a) / Omega1 / S(k)."""
    if ref in named:
        return named[ref]
    if ref == "Omega1":
        return cotangent_sheaf(space)
    if ref == "O":
        return space.structure_sheaf(0)
    m = _BUILTIN_RE.match(ref)
    if m:
        value = int(m.group(2))
        if m.group(1) == "O":
            return space.structure_sheaf(value)
        return generator(value, space).module
    raise ManifestError(
        f"unresolved module reference {ref!r}; expected a declared module, "
        "O(a), Omega1 or S(k)", line=line,
    )


# -- value scanner ----------------------------------------------------------


def _parse_value(text: str, line: int):
    """Parse a right-hand side: int, a..b range, bare token, quoted string,
    or (nested) list.  Returns the value and rejects trailing junk."""
    value, pos = _scan_value(text, 0, line)
    if text[pos:].strip():
        raise ManifestError(
            f"trailing characters after value: {text[pos:].strip()!r}",
            line=line, column=pos + 1,
        )
    return value


def _scan_value(text: str, pos: int, line: int):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if pos >= len(text):
        raise ManifestError("missing value", line=line, column=pos + 1)
    ch = text[pos]
    if ch == "[":
        items = []
        pos += 1
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos < len(text) and text[pos] == "]":
                return items, pos + 1
            item, pos = _scan_value(text, pos, line)
            items.append(item)
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            if pos < len(text) and text[pos] == "]":
                return items, pos + 1
            raise ManifestError(
                "expected ',' or ']' in list", line=line, column=pos + 1
            )
    if ch == '"':
        end = text.find('"', pos + 1)
        if end < 0:
            raise ManifestError("unterminated string", line=line, column=pos + 1)
        return text[pos + 1:end], end + 1
    # bare token: runs to the next comma or bracket, may contain spaces
    end = pos
    while end < len(text) and text[end] not in ",]\"[":
        end += 1
    token = text[pos:end].strip()
    if not token:
        raise ManifestError("empty value item", line=line, column=pos + 1)
    if re.fullmatch(r"-?\d+", token):
        return int(token), end
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", token)
    if m:
        return ("range", int(m.group(1)), int(m.group(2))), end
    return token, end


# -- the parser -------------------------------------------------------------


def _strip_comment(line: str) -> str:
    out = []
    quoted = False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        if ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out).rstrip()


def _int_value(value, key: str, line: int) -> int:
    if not isinstance(value, int):
        raise ManifestError(f"{key} expects an integer", line=line)
    return value


def _string_list(value, key: str, line: int) -> list:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ManifestError(f"{key} expects a list of names", line=line)
    return value


def _matrix_value(value, key: str, line: int) -> list:
    if (not isinstance(value, list)
            or any(not isinstance(col, list) for col in value)):
        raise ManifestError(
            f"{key} expects a list of columns (lists of polynomial strings)",
            line=line,
        )
    cols = []
    for col in value:
        entries = []
        for e in col:
            if isinstance(e, int):
                e = str(e)
            if not isinstance(e, str):
                raise ManifestError(
                    f"{key} entries must be polynomial strings", line=line
                )
            entries.append(e)
        cols.append(entries)
    return cols


def _poly(text: str, nv: int, line: int) -> Polynomial:
    try:
        return parse_polynomial(text, nv)
    except BraneGaugeError as e:
        raise ManifestError(f"bad polynomial {text!r}: {e}", line=line) from e


def _columns_matrix(nv: int, row_twists, cols, key: str, line: int) -> PolyMatrix:
    """Column-major string data to a PolyMatrix, inferring column twists
    from the first nonzero entry of each column."""
    polys = []
    col_twists = []
    for ci, col in enumerate(cols):
        if len(col) != len(row_twists):
            raise ManifestError(
                f"{key}: column {ci} has {len(col)} entries, expected "
                f"{len(row_twists)}", line=line,
            )
        pcol = [_poly(e, nv, line) for e in col]
        tw = None
        for r, q in enumerate(pcol):
            if not q.is_zero:
                d = q.homogeneous_degree()
                if d is None:
                    raise ManifestError(
                        f"{key}: column {ci} entry {r} is not homogeneous",
                        line=line,
                    )
                tw = d + row_twists[r]
                break
        if tw is None:
            raise ManifestError(
                f"{key}: column {ci} is identically zero; its degree cannot "
                "be inferred", line=line,
            )
        polys.append(pcol)
        col_twists.append(tw)
    try:
        return PolyMatrix.from_columns(nv, tuple(row_twists), polys, col_twists)
    except BraneGaugeError as e:
        raise ManifestError(f"{key}: {e}", line=line) from e


def parse_manifest(text) -> Manifest:
    """Parse manifest text (str or UTF-8 bytes) into a validated Manifest."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    space = None
    modules: dict = {}
    module_columns: dict = {}
    complex_blocks: list = []
    tasks: list = []
    block = None  # ("ring"|"module"|"complex"|"task", name, line, data)

    def close_block():
        nonlocal n, space
        if block is None:
            return
        kind, name, bline, data = block
        if kind == "ring":
            if "n" not in data:
                raise ManifestError("[ring] needs n = <dimension>", line=bline)
            if n is not None:
                raise ManifestError("duplicate [ring] block", line=bline)
            n = _int_value(data["n"][0], "n", data["n"][1])
            try:
                space = ProjectiveSpace(n)
            except BraneGaugeError as e:
                raise ManifestError(str(e), line=data["n"][1]) from e
        elif kind == "module":
            if space is None:
                raise ManifestError(
                    "[module] must come after [ring]", line=bline
                )
            if name in modules:
                raise ManifestError(f"duplicate module {name!r}", line=bline)
            if "twists" not in data:
                raise ManifestError("module needs twists = [..]", line=bline)
            tw_val, tw_line = data["twists"]
            if (not isinstance(tw_val, list)
                    or any(not isinstance(t, int) for t in tw_val)):
                raise ManifestError("twists expects a list of integers",
                                    line=tw_line)
            covers = tuple(tw_val)
            cols: list = []
            if "relations" in data:
                cols = _matrix_value(data["relations"][0], "relations",
                                     data["relations"][1])
            nv = space.nvars
            if cols:
                rel = _columns_matrix(nv, covers, cols, "relations",
                                      data["relations"][1])
            else:
                rel = PolyMatrix.zero(nv, covers, ())
            modules[name] = GradedModule(rel)
            module_columns[name] = (covers, cols)
        elif kind == "complex":
            complex_blocks.append((name, bline, data))
        else:
            task = TaskDef(kind=name, index=len(tasks) + 1, line=bline)
            for key, (value, kline) in data.items():
                if key.startswith("level "):
                    task.matrices[("level", int(key.split()[1]))] = \
                        _matrix_value(value, key, kline)
                elif key == "matrix":
                    task.matrices["matrix"] = _matrix_value(value, key, kline)
                else:
                    task.params[key] = (value, kline)
            tasks.append(task)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if line != line.lstrip():
            line = line.strip()
        m = _BLOCK_RE.match(line)
        if m:
            close_block()
            btype, bname = m.group(1), m.group(2)
            if btype == "ring":
                if bname is not None:
                    raise ManifestError("[ring] takes no name", line=lineno)
                block = ("ring", None, lineno, {})
            elif btype in ("module", "complex"):
                if bname is None:
                    raise ManifestError(f"[{btype}] needs a name", line=lineno)
                if _BUILTIN_RE.match(bname) or bname in ("Omega1", "O"):
                    raise ManifestError(
                        f"{bname!r} shadows a built-in name", line=lineno
                    )
                block = (btype, bname, lineno, {})
            elif btype == "task":
                if bname not in TASK_KINDS:
                    raise ManifestError(
                        f"unknown task kind {bname!r}; expected one of "
                        + ", ".join(TASK_KINDS), line=lineno,
                    )
                block = ("task", bname, lineno, {})
            else:
                raise ManifestError(
                    f"unknown block type {btype!r}; expected ring, module, "
                    "complex or task", line=lineno,
                )
            continue
        km = _KEY_RE.match(line)
        if not km:
            raise ManifestError(
                "expected a block header [..] or a key = value line",
                line=lineno,
            )
        if block is None:
            raise ManifestError(
                "key outside any block; start with [ring]", line=lineno
            )
        key = km.group(1) + (f" {km.group(2)}" if km.group(2) else "")
        value = _parse_value(km.group(3), lineno)
        if key in block[3]:
            raise ManifestError(f"duplicate key {key!r}", line=lineno)
        block[3][key] = (value, lineno)
    close_block()

    if space is None:
        raise ManifestError("manifest has no [ring] block", line=1)

    complexes: dict = {}
    complex_layout: dict = {}
    for name, bline, data in complex_blocks:
        if name in modules or name in complexes:
            raise ManifestError(f"duplicate name {name!r}", line=bline)
        complexes[name], complex_layout[name] = _build_complex(
            name, bline, data, space, modules
        )

    for task in tasks:
        _validate_task(task, space, modules, complexes)

    return Manifest(
        n=space.n, space=space, modules=modules,
        module_columns=module_columns, complexes=complexes,
        complex_layout=complex_layout, tasks=tasks,
    )


def _build_complex(name, bline, data, space, modules):
    if "degrees" not in data:
        raise ManifestError("complex needs degrees = lo..hi", line=bline)
    dval, dline = data["degrees"]
    if isinstance(dval, int):
        lo = hi = dval
    elif isinstance(dval, tuple) and dval[0] == "range":
        lo, hi = dval[1], dval[2]
    else:
        raise ManifestError("degrees expects lo..hi", line=dline)
    if hi < lo:
        raise ManifestError("degrees range is empty", line=dline)
    nv = space.nvars
    terms = []
    for i in range(lo, hi + 1):
        key = f"term {i}"
        if key in data:
            ref, kline = data[key]
            if not isinstance(ref, str):
                raise ManifestError(f"{key} expects a module name", line=kline)
            terms.append(resolve_module_ref(ref, space, modules, kline))
        else:
            terms.append(GradedModule.free(nv, ()))
    diffs = []
    for i in range(lo, hi):
        key = f"map {i}"
        src, tgt = terms[i - lo], terms[i + 1 - lo]
        if key in data:
            cols, kline = data[key]
            cols = _matrix_value(cols, key, kline)
            if len(cols) != src.rank:
                raise ManifestError(
                    f"{key}: {len(cols)} columns for a rank-{src.rank} source",
                    line=kline,
                )
            mat = _columns_for_map(nv, tgt.cover_twists, src.cover_twists,
                                   cols, key, kline)
            try:
                diffs.append(GradedMap(src, tgt, mat, check=True))
            except BraneGaugeError as e:
                raise ManifestError(f"{key}: {e}", line=kline) from e
        else:
            diffs.append(GradedMap.zero_map(src, tgt))
    generators: dict = {}
    for key, (value, kline) in data.items():
        if key.startswith("generators "):
            i = int(key.split()[1])
            if not lo <= i <= hi:
                raise ManifestError(
                    f"{key} outside degrees {lo}..{hi}", line=kline
                )
            generators[i] = _string_list(value, key, kline)
        elif key not in ("degrees",) and not key.startswith(("term ", "map ")):
            raise ManifestError(f"unknown complex key {key!r}", line=kline)
    for key in data:
        if key.startswith(("term ", "map ")):
            i = int(key.split()[1])
            top = hi if key.startswith("term ") else hi - 1
            if not lo <= i <= top:
                raise ManifestError(
                    f"{key} outside degrees {lo}..{hi}", line=data[key][1]
                )
    try:
        cx = BoundedComplex(nv, lo, terms, diffs, check=True)
    except BraneGaugeError as e:
        raise ManifestError(f"complex {name!r}: {e}", line=bline) from e
    layout = {"lo": lo, "hi": hi, "data": data, "generators": generators}
    return cx, layout


def _columns_for_map(nv, row_twists, col_twists, cols, key, line):
    """Matrix data for a map whose column twists are already known."""
    polys = []
    for ci, col in enumerate(cols):
        if len(col) != len(row_twists):
            raise ManifestError(
                f"{key}: column {ci} has {len(col)} entries, expected "
                f"{len(row_twists)}", line=line,
            )
        polys.append([_poly(e, nv, line) for e in col])
    try:
        return PolyMatrix.from_columns(nv, tuple(row_twists), polys,
                                       list(col_twists))
    except BraneGaugeError as e:
        raise ManifestError(f"{key}: {e}", line=line) from e


def _validate_task(task: TaskDef, space, modules, complexes):
    required, optional = _TASK_PARAMS[task.kind]
    for p in required:
        if p not in task.params:
            raise ManifestError(
                f"task {task.kind!r} needs {p} = ...", line=task.line
            )
    allowed = set(required) | set(optional)
    for p in task.params:
        if p not in allowed:
            raise ManifestError(
                f"task {task.kind!r} does not take {p!r}; allowed: "
                + (", ".join(sorted(allowed)) or "none"), line=task.line,
            )
    for p in _INT_PARAMS.get(task.kind, ()):
        if p in task.params:
            _int_value(task.params[p][0], p, task.params[p][1])
    for p in _MODULE_REF_PARAMS.get(task.kind, ()):
        value, line = task.params[p]
        if not isinstance(value, str):
            raise ManifestError(f"{p} expects a module name", line=line)
        resolve_module_ref(value, space, modules, line)
    for p in _COMPLEX_REF_PARAMS.get(task.kind, ()):
        value, line = task.params[p]
        if not isinstance(value, str) or value not in complexes:
            raise ManifestError(
                f"{p} must name a declared complex", line=line
            )
    if task.kind == "hom-complex" and "oracle" in task.params:
        value, line = task.params["oracle"]
        if value not in ("module", "sheaf"):
            raise ManifestError(
                "oracle must be 'module' or 'sheaf'", line=line
            )
    if task.kind == "disjointness":
        for p in ("i", "j"):
            v = task.params[p][0]
            if not 1 <= v <= space.n + 1:
                raise ManifestError(
                    f"{p} = {v} outside the generator range 1..{space.n + 1}",
                    line=task.params[p][1],
                )


# -- the printer ------------------------------------------------------------


def _fmt_matrix(cols) -> str:
    inner = ", ".join(
        "[" + ", ".join(f'"{e}"' for e in col) + "]" for col in cols
    )
    return f"[{inner}]"


def _fmt_int_list(values) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


def print_manifest(m: Manifest) -> str:
    """Canonical text for a manifest; parsing it reproduces the same
    structures (round-trip normal form)."""
    out = ["[ring]", f"n = {m.n}", ""]
    for name, module in m.modules.items():
        covers, cols = m.module_columns[name]
        out.append(f"[module {name}]")
        out.append(f"twists = {_fmt_int_list(covers)}")
        if cols:
            canonical = [
                [str(q) for q in module.relations.column(c)]
                for c in range(len(module.relations.col_twists))
            ]
            out.append(f"relations = {_fmt_matrix(canonical)}")
        out.append("")
    for name, cx in m.complexes.items():
        layout = m.complex_layout[name]
        lo, hi = layout["lo"], layout["hi"]
        out.append(f"[complex {name}]")
        out.append(f"degrees = {lo}..{hi}")
        data = layout["data"]
        for i in range(lo, hi + 1):
            key = f"term {i}"
            if key in data:
                out.append(f"term {i} = {data[key][0]}")
        for i in range(lo, hi):
            key = f"map {i}"
            if key in data:
                cols = [
                    [str(q) for q in cx.diff(i).matrix.column(c)]
                    for c in range(cx.term(i).rank)
                ]
                out.append(f"map {i} = {_fmt_matrix(cols)}")
        for i in sorted(layout["generators"]):
            names = ", ".join(layout["generators"][i])
            out.append(f"generators {i} = [{names}]")
        out.append("")
    for task in m.tasks:
        out.append(f"[task {task.kind}]")
        for key in sorted(task.params):
            out.append(f"{key} = {task.params[key][0]}")
        if "matrix" in task.matrices:
            out.append(f"matrix = {_fmt_matrix(task.matrices['matrix'])}")
        for mk in sorted(k for k in task.matrices if k != "matrix"):
            out.append(f"level {mk[1]} = {_fmt_matrix(task.matrices[mk])}")
        out.append("")
    return "\n".join(out)
