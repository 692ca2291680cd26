"""Family-spec parsing, per-state CSV rows and the command implementations.

Spec grammar::

    family(key=value, key=value, ...)
    family(key=start:stop:steps, ...)     # sweeps: exactly one ranged key

Values are numbers or small arithmetic expressions (``sqrt(1/3)``,
``0.5+0.1j``, ``pi``); ``bell(which=phi+)`` and ``basis_product(bits=0110)``
take literal text.
"""

import ast
import math
import operator
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from . import catalog, stokes
from .catalog import FamilySpec
from .errors import DomainError, SpecParseError
from .harness import verify_identities
from .measures import concurrence_mixed, eof_from_concurrence, pairwise_concurrence_sq
from .states import analyze

INT, REAL, COMPLEX, TEXT = "int", "real", "complex", "text"

PARAM_TYPES = {
    "bell": {"which": TEXT},
    "bell_diagonal": {"w1": REAL, "w2": REAL, "w3": REAL, "w4": REAL},
    "werner": {"w": REAL},
    "cat": {"n": INT, "alpha": REAL},
    "w_state": {"alpha": COMPLEX, "beta": COMPLEX, "gamma": COMPLEX},
    "mems": {"gamma": REAL},
    "mixed_cat": {"n": INT, "w": REAL},
    "basis_product": {"bits": TEXT},
    "fully_mixed": {"n": INT},
}

BASE_COLUMNS = (
    "param_name", "param_value", "n_qubits", "purity", "mixedness", "s_n_sq",
    "d_hs_sq", "indistinguishability", "residual_purity", "residual_symmetry",
)
TWO_QUBIT_COLUMNS = ("concurrence", "eof")
THREE_QUBIT_COLUMNS = ("c2_12", "c2_23", "c2_13")


# ---------------------------------------------------------------- expressions

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_FUNCS = {"sqrt": lambda x: x ** 0.5}
_NAMES = {"pi": math.pi}


def _eval_node(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_eval_node(node.operand))
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    raise ValueError("unsupported expression")


def eval_number(text):
    """Evaluate a numeric literal or small arithmetic expression."""
    tree = ast.parse(text.strip(), mode="eval")
    return _eval_node(tree.body)


def _convert(kind, raw, pos):
    if kind == TEXT:
        return raw.strip()
    try:
        value = eval_number(raw)
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError):
        raise SpecParseError(f"cannot read number {raw.strip()!r}", pos) from None
    if kind == COMPLEX:
        return complex(value)
    if isinstance(value, complex):
        if value.imag != 0.0:
            raise SpecParseError(f"expected a real number, got {raw.strip()!r}", pos)
        value = value.real
    if kind == INT:
        if float(value) != int(value):
            raise SpecParseError(f"expected an integer, got {raw.strip()!r}", pos)
        return int(value)
    return float(value)


# --------------------------------------------------------------------- parser

def _split_spec(text):
    """Split ``family(k=v, ...)`` into name and ``(key, raw_value, key_pos, value_pos)``."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    open_at = stripped.find("(")
    if open_at <= 0:
        raise SpecParseError("expected 'family(key=value, ...)'", offset + max(open_at, 0))
    if not stripped.endswith(")"):
        raise SpecParseError("missing closing ')'", offset + len(stripped))
    name = stripped[:open_at].strip()
    body = stripped[open_at + 1:-1]
    base = offset + open_at + 1

    items = []
    depth = 0
    start = 0
    for i, ch in enumerate(body + ","):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecParseError("unbalanced ')'", base + i)
        elif ch == "," and depth == 0:
            chunk = body[start:i]
            if chunk.strip():
                if "=" not in chunk:
                    raise SpecParseError(f"expected key=value, got {chunk.strip()!r}", base + start)
                key, raw = chunk.split("=", 1)
                lead = len(key) - len(key.lstrip())
                items.append((key.strip(), raw, base + start + lead, base + start + len(key) + 1))
            elif i < len(body):
                raise SpecParseError("empty parameter", base + start)
            start = i + 1
    if depth != 0:
        raise SpecParseError("unbalanced '('", base + len(body))
    return name, items, offset


def _parse(text, allow_range):
    name, items, offset = _split_spec(text)
    if name not in PARAM_TYPES:
        raise SpecParseError(
            f"unknown family {name!r}; expected one of {', '.join(catalog.FAMILIES)}", offset
        )
    types = PARAM_TYPES[name]
    params = {}
    ranged = None
    for key, raw, key_pos, val_pos in items:
        if key not in types:
            raise SpecParseError(f"unknown key {key!r} for {name}; expected {sorted(types)}", key_pos)
        if key in params or (ranged and ranged[0] == key):
            raise SpecParseError(f"duplicate key {key!r}", key_pos)
        kind = types[key]
        if allow_range and kind != TEXT and raw.count(":") == 2:
            if ranged is not None:
                raise SpecParseError("only one parameter may be ranged", key_pos)
            if kind != REAL:
                raise SpecParseError(f"only real parameters can be swept, {key!r} is {kind}", key_pos)
            start_s, stop_s, steps_s = raw.split(":")
            start = _convert(REAL, start_s, val_pos)
            stop = _convert(REAL, stop_s, val_pos)
            steps = _convert(INT, steps_s, val_pos)
            ranged = (key, start, stop, steps, val_pos)
            continue
        params[key] = _convert(kind, raw, val_pos)
    missing = set(types) - set(params) - ({ranged[0]} if ranged else set())
    if missing:
        raise SpecParseError(f"missing parameters for {name}: {sorted(missing)}", offset + len(text.strip()))
    return name, params, ranged


def parse_family_spec(text):
    """Parse and validate ``family(key=value, ...)``.

    Raises:
        SpecParseError: malformed text, unknown family/key, or a parameter
            outside its domain (position points at the spec start).
    """
    name, params, _ = _parse(text, allow_range=False)
    spec = FamilySpec(name, params)
    _check_domain(spec, text)
    return spec


def _check_domain(spec, text):
    try:
        spec.build()
    except DomainError as exc:
        raise SpecParseError(f"domain error in {text.strip()!r}: {exc}", 0) from exc


@dataclass(frozen=True)
class SweepSpec:
    """A family spec with one real parameter swept over ``steps`` evenly spaced points."""

    family: str
    params: dict
    key: str
    start: float
    stop: float
    steps: int

    def values(self):
        return np.linspace(self.start, self.stop, self.steps)

    def spec_at(self, value):
        return FamilySpec(self.family, {**self.params, self.key: float(value)})


def parse_sweep_spec(text):
    name, params, ranged = _parse(text, allow_range=True)
    if ranged is None:
        raise SpecParseError("sweep needs one parameter written as key=start:stop:steps", 0)
    key, start, stop, steps, pos = ranged
    if steps < 2:
        raise SpecParseError(f"steps must be >= 2, got {steps}; use 'analyze' for a single point", pos)
    if not start < stop:
        raise SpecParseError(f"range must be increasing, got {start}:{stop}", pos)
    sweep = SweepSpec(name, params, key, start, stop, steps)
    for endpoint in (start, stop):
        _check_domain(sweep.spec_at(endpoint), text)
    return sweep


# ----------------------------------------------------------------------- rows

def fmt(x):
    """17-significant-digit rendering; round-trips every double exactly."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return f"{float(x):.17g}"


def columns_for(n_qubits):
    cols = list(BASE_COLUMNS)
    if n_qubits == 2:
        cols += TWO_QUBIT_COLUMNS
    elif n_qubits == 3:
        cols += THREE_QUBIT_COLUMNS
    return cols


def state_row(spec, param_name="", param_value=""):
    """Every column value for one state, keyed by column name."""
    rho = spec.build()
    rep = analyze(rho)
    row = {
        "param_name": param_name,
        "param_value": param_value,
        "n_qubits": rho.n_qubits,
        "purity": rep.purity,
        "mixedness": rep.mixedness,
        "s_n_sq": rep.s_n_sq,
        "d_hs_sq": rep.d_hs_sq,
        "indistinguishability": rep.indistinguishability,
        "residual_purity": rep.residual_purity,
        "residual_symmetry": rep.residual_symmetry,
    }
    if rho.n_qubits == 2:
        c = concurrence_mixed(rho).concurrence
        row["concurrence"] = c
        row["eof"] = eof_from_concurrence(c)
    elif rho.n_qubits == 3:
        pairs = pairwise_concurrence_sq(rho)
        row["c2_12"] = pairs[(1, 2)]
        row["c2_23"] = pairs[(2, 3)]
        row["c2_13"] = pairs[(1, 3)]
    return row


def select_columns(available, requested):
    if not requested:
        return list(available)
    unknown = [c for c in requested if c not in available]
    if unknown:
        raise SpecParseError(f"unknown column(s) {unknown}; available: {', '.join(available)}")
    return list(requested)


def render_csv(columns, rows, meta=(), footer=()):
    lines = [f"# {m}" for m in meta]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(fmt(row[c]) for c in columns))
    lines.extend(f"# {f}" for f in footer)
    return "\n".join(lines) + "\n"


def write_atomic(path, text):
    """Write via a temporary file in the target directory, then rename over ``path``."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".csv", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ------------------------------------------------------------------- commands

def cmd_analyze(spec, out=None, columns=None):
    """Human-readable report for one state; optionally also a one-row CSV."""
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    row = state_row(spec)
    cols = columns_for(row["n_qubits"])
    lines = [f"state: {spec.family}({', '.join(f'{k}={v}' for k, v in spec.params.items())})"]
    for c in cols[2:]:
        label = {"c2_12": "c2(1,2)", "c2_23": "c2(2,3)", "c2_13": "c2(1,3)"}.get(c, c)
        lines.append(f"  {label:<22s} {fmt(row[c])}")
    if out is not None:
        write_atomic(out, render_csv(select_columns(cols, columns), [row]))
    return "\n".join(lines) + "\n"


def sweep_rows(sweep):
    return [state_row(sweep.spec_at(x), sweep.key, float(x)) for x in sweep.values()]


def cmd_sweep(sweep, out=None, columns=None):
    """CSV text for every sweep point; written atomically to ``out`` when given."""
    if isinstance(sweep, str):
        text = sweep
        sweep = parse_sweep_spec(sweep)
    else:
        text = f"{sweep.family}(...)"
    rows = sweep_rows(sweep)
    cols = select_columns(columns_for(rows[0]["n_qubits"]), columns)
    meta = [f"spec={text.strip()}", f"steps={sweep.steps}"]
    csv = render_csv(cols, rows, meta=meta)
    if out is not None:
        write_atomic(out, csv)
    return csv


def cmd_stokes(spec, out=None):
    """``index,value`` CSV of the Stokes tensor with both norms as footer lines."""
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    t = stokes.stokes_from_density(spec.build())
    rows = [{"index": lab, "value": float(v)} for lab, v in zip(t.labels(), t.values)]
    footer = [
        f"euclidean_norm_sq={fmt(stokes.euclidean_norm_sq(t))}",
        f"minkowski_norm_sq={fmt(stokes.minkowski_norm_sq(t))}",
    ]
    csv = render_csv(["index", "value"], rows, footer=footer)
    if out is not None:
        write_atomic(out, csv)
    return csv


def cmd_verify(trials=200, n_max=4, seed=0, tol=1e-8):
    """Run the identity/invariance suite; returns ``(exit_code, report_text)``."""
    report = verify_identities(trials=trials, n_range=(1, n_max), seed=seed, tol=tol)
    return (0 if report.passed else 1), report.format() + "\n"
