"""Line-oriented text formats for covering models and rational maps.

Model files:

    # comment
    nodes 3
    edge 0 0 2
    edge 1 0 1
    cocycle multiplicative          # optional, this is the default

Map files:

    degree 2
    mode exact                      # optional, exact is the default
    P 1 0 -2
    Q 0 0 1

Coefficients are rationals ("-3/2"), decimals ("0.5"), or complex numbers
written as "a+bi" with rational or decimal parts.  Component lines list
exactly degree + 1 coefficients from c_degree down to c_0, so a leading 0
declares a genuine power of the homogenizing variable.

Parsers report syntax problems with the offending line number; structural
violations (a model with a source node, a degenerate map) surface the
validating error's witness text instead.
"""

from __future__ import annotations

from fractions import Fraction

from .cocycle import CocycleSpec, ExplicitSpec, MultiplicativeSpec, builtin_explicit_spec
from .errors import InputError, ParseError
from .model import CoveringModel
from .poly import Poly, pad_descending
from .rational_maps import RationalMap, make_map
from .scalars import APPROX, EXACT, Scalar


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def _parse_fraction(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational literal {token!r}", lineno) from None


def _split_complex(token: str) -> tuple[str, str]:
    """Split 'a+bi' into real and signed imaginary part (without the i)."""
    body = token[:-1]
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "eE":
            return body[:i], body[i:]
    return "0", body or "1"


def _parse_scalar(token: str, mode: str, lineno: int) -> Scalar:
    if token.endswith("i") or token.endswith("I"):
        re_text, im_text = _split_complex(token)
        if im_text in ("+", "-"):
            im_text += "1"
    else:
        re_text, im_text = token, "0"
    if mode == EXACT:
        return Scalar.exact(
            _parse_fraction(re_text, lineno), _parse_fraction(im_text, lineno)
        )
    try:
        return Scalar.approx(complex(float(re_text), float(im_text)))
    except ValueError:
        raise ParseError(f"bad numeric literal {token!r}", lineno) from None


def format_scalar(s: Scalar) -> str:
    if s.is_exact():
        if s.im == 0:
            return str(s.re)
        sep = "+" if s.im >= 0 else ""
        return f"{s.re}{sep}{s.im}i"
    if s.im == 0.0:
        return repr(s.re)
    sep = "+" if s.im >= 0 else ""
    return f"{repr(s.re)}{sep}{repr(s.im)}i"


# -- models -------------------------------------------------------------------


def parse_model(text: str, allow_sources: bool = False) -> tuple[CoveringModel, CocycleSpec]:
    """Parse model text into a validated model and its cocycle spec.

    allow_sources drops the in-degree requirement, for models that stand in
    for non-surjective maps; the default enforces it.
    """
    node_count: int | None = None
    edges: list[tuple[int, int, Fraction]] = []
    seen_edges: set[tuple[int, int]] = set()
    cocycle_decl: tuple[int, list[str]] | None = None
    for lineno, body in _meaningful_lines(text):
        parts = body.split()
        if parts[0] == "nodes":
            if node_count is not None:
                raise ParseError("duplicate nodes line", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected: nodes N", lineno)
            node_count = int(parts[1])
            if node_count < 1:
                raise ParseError("node count must be at least 1", lineno)
        elif parts[0] == "edge":
            if node_count is None:
                raise ParseError("edge line before the nodes line", lineno)
            if len(parts) != 4:
                raise ParseError("expected: edge FROM TO WEIGHT", lineno)
            try:
                src, dst = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", lineno) from None
            if not (0 <= src < node_count and 0 <= dst < node_count):
                raise ParseError(
                    f"edge endpoint out of range 0..{node_count - 1}", lineno
                )
            weight = _parse_fraction(parts[3], lineno)
            if weight <= 0:
                raise ParseError("edge weight must be positive", lineno)
            if (src, dst) in seen_edges:
                raise ParseError(f"duplicate edge {src} -> {dst}", lineno)
            seen_edges.add((src, dst))
            edges.append((src, dst, weight))
        elif parts[0] == "cocycle":
            if cocycle_decl is not None:
                raise ParseError("duplicate cocycle line", lineno)
            if len(parts) == 2 and parts[1] == "multiplicative":
                cocycle_decl = (lineno, parts[1:])
            elif len(parts) == 3 and parts[1] == "explicit":
                cocycle_decl = (lineno, parts[1:])
            else:
                raise ParseError(
                    "expected: cocycle multiplicative | cocycle explicit NAME", lineno
                )
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", lineno)
    if node_count is None:
        raise ParseError("missing nodes line", 1)
    try:
        model = CoveringModel.build(
            node_count, edges, require_surjective=not allow_sources
        )
    except InputError as exc:
        raise ParseError(str(exc)) from exc
    if cocycle_decl is None or cocycle_decl[1] == ["multiplicative"]:
        spec: CocycleSpec = MultiplicativeSpec.from_model(model)
    else:
        lineno, (_, name) = cocycle_decl
        try:
            spec = builtin_explicit_spec(name, model)
        except InputError as exc:
            raise ParseError(str(exc), lineno) from exc
    return model, spec


def emit_model(model: CoveringModel, spec: CocycleSpec) -> str:
    """Serialize a model; parse(emit(...)) reproduces it field for field."""
    lines = [f"nodes {model.node_count}"]
    for e in model.edges:
        lines.append(f"edge {e.src} {e.dst} {e.weight}")
    if isinstance(spec, ExplicitSpec):
        lines.append(f"cocycle explicit {spec.name}")
    else:
        lines.append("cocycle multiplicative")
    return "\n".join(lines) + "\n"


# -- maps ---------------------------------------------------------------------


def parse_map(text: str) -> RationalMap:
    """Parse map text; the resultant check runs as part of construction."""
    degree: int | None = None
    mode: str | None = None
    rows: dict[str, tuple[int, list[str]]] = {}
    for lineno, body in _meaningful_lines(text):
        parts = body.split()
        key = parts[0]
        if key == "degree":
            if degree is not None:
                raise ParseError("duplicate degree line", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected: degree D", lineno)
            degree = int(parts[1])
        elif key == "mode":
            if mode is not None:
                raise ParseError("duplicate mode line", lineno)
            if len(parts) != 2 or parts[1] not in (EXACT, APPROX):
                raise ParseError("expected: mode exact | mode approx", lineno)
            mode = parts[1]
        elif key in ("P", "Q"):
            if key in rows:
                raise ParseError(f"duplicate {key} line", lineno)
            if degree is None:
                raise ParseError(f"{key} line before the degree line", lineno)
            if len(parts) != degree + 2:
                raise ParseError(
                    f"expected {degree + 1} coefficients c_{degree} .. c_0", lineno
                )
            rows[key] = (lineno, parts[1:])
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if degree is None:
        raise ParseError("missing degree line", 1)
    for key in ("P", "Q"):
        if key not in rows:
            raise ParseError(f"missing {key} line", 1)
    mode = mode or EXACT
    polys = {}
    for key, (lineno, tokens) in rows.items():
        coeffs = [_parse_scalar(t, mode, lineno) for t in tokens]
        if all(c.is_zero() for c in coeffs):
            raise ParseError(f"{key} is identically zero", lineno)
        polys[key] = Poly.make(coeffs)
    try:
        return make_map(polys["P"], polys["Q"], degree)
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def emit_map(f: RationalMap) -> str:
    lines = [f"degree {f.degree}", f"mode {f.mode}"]
    for key, poly in (("P", f.p), ("Q", f.q)):
        tokens = [format_scalar(c) for c in pad_descending(poly, f.degree)]
        lines.append(f"{key} " + " ".join(tokens))
    return "\n".join(lines) + "\n"
