"""JSON codecs for every external format.

Scalars travel as exact "p/q" strings (plain integers allowed); basis
indices are 1-based outside the engine.  Object-rooted documents carry a
"schema": "nary/1" version field, which is required on output and checked
when present on input.  Parse errors carry the offending field path.
"""

import json
from fractions import Fraction

from .derived import NaryStructure, Potential
from .errors import SchemaError
from .poisson import Element
from .superspace import Superspace

SCHEMA = "nary/1"


def parse_scalar(value, path="scalar"):
    if isinstance(value, bool):
        raise SchemaError(path, "expected a rational scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as ex:
            raise SchemaError(path, f"bad rational literal {value!r}: {ex}")
    raise SchemaError(path, f"expected int or 'p/q' string, got {type(value).__name__}")


def fmt_scalar(q):
    return str(Fraction(q))


def _check_schema(obj, path):
    if "schema" in obj and obj["schema"] != SCHEMA:
        raise SchemaError(f"{path}.schema", f"unsupported schema {obj['schema']!r}")


# ---------------------------------------------------------------------------
# superspace


def parse_superspace(obj, path="superspace", max_degree=None):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    _check_schema(obj, path)
    for key in ("dim", "parity", "gram"):
        if key not in obj:
            raise SchemaError(f"{path}.{key}", "missing field")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"{path}.dim", "expected a positive integer")
    parity_names = obj["parity"]
    if len(parity_names) != dim:
        raise SchemaError(f"{path}.parity", f"expected {dim} entries")
    parity = []
    for i, name in enumerate(parity_names):
        if name not in ("even", "odd"):
            raise SchemaError(f"{path}.parity[{i}]", "expected 'even' or 'odd'")
        parity.append(1 if name == "odd" else 0)
    gram_rows = obj["gram"]
    if len(gram_rows) != dim:
        raise SchemaError(f"{path}.gram", f"expected {dim} rows")
    gram = []
    for i, row in enumerate(gram_rows):
        if len(row) != dim:
            raise SchemaError(f"{path}.gram[{i}]", f"expected {dim} entries")
        gram.append([parse_scalar(x, f"{path}.gram[{i}][{j}]")
                     for j, x in enumerate(row)])
    if max_degree is None:
        max_degree = obj.get("max_degree")
    return Superspace(dim, parity, gram, max_degree=max_degree)


def superspace_to_json(space):
    return {
        "schema": SCHEMA,
        "dim": space.dim,
        "parity": ["odd" if p else "even" for p in space.parity],
        "gram": [[fmt_scalar(x) for x in row] for row in space.gram],
    }


# ---------------------------------------------------------------------------
# elements


def parse_element(space, arr, path="element"):
    if not isinstance(arr, list):
        raise SchemaError(path, "expected a list of terms")
    terms = {}
    for t, item in enumerate(arr):
        where = f"{path}[{t}]"
        if not isinstance(item, dict) or "monomial" not in item or "coeff" not in item:
            raise SchemaError(where, "expected {'monomial': [...], 'coeff': ...}")
        raw = item["monomial"]
        mono = []
        for k, idx in enumerate(raw):
            if not isinstance(idx, int) or not 1 <= idx <= space.dim:
                raise SchemaError(f"{where}.monomial[{k}]",
                                  f"index out of range 1..{space.dim}")
            mono.append(idx - 1)
        for a, b in zip(mono, mono[1:]):
            if a > b:
                raise SchemaError(f"{where}.monomial",
                                  "indices must be ascending")
            if a == b and space.parity[a] == 1:
                raise SchemaError(f"{where}.monomial",
                                  "repeated odd generator")
        coeff = parse_scalar(item["coeff"], f"{where}.coeff")
        mono = tuple(mono)
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return Element(space, terms)


def element_to_json(el):
    return [{"monomial": [i + 1 for i in mono], "coeff": fmt_scalar(c)}
            for mono, c in el.sorted_terms()]


# ---------------------------------------------------------------------------
# potentials and structures


def parse_potential(space, obj, path="potential"):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    _check_schema(obj, path)
    if "linf" in obj:
        layers = obj["linf"]
        if not isinstance(layers, list):
            raise SchemaError(f"{path}.linf", "expected a list of elements")
        total = Element.zero(space)
        for i, layer in enumerate(layers):
            total = total + parse_element(space, layer, f"{path}.linf[{i}]")
        return Potential.homotopy_family(space, total)
    if "element" not in obj:
        raise SchemaError(f"{path}.element", "missing field")
    el = parse_element(space, obj["element"], f"{path}.element")
    arity = obj.get("arity")
    if arity is not None and (not isinstance(arity, int) or arity < 1):
        raise SchemaError(f"{path}.arity", "expected a positive integer")
    return Potential.single(space, el, arity=arity)


def potential_to_json(mu):
    if mu.family:
        return {"schema": SCHEMA,
                "linf": [element_to_json(layer)
                         for _, layer in sorted(mu.layers().items())]}
    return {"schema": SCHEMA, "arity": mu.arity,
            "element": element_to_json(mu.element)}


def parse_structure(space, obj, path="structure"):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    _check_schema(obj, path)
    if "arity" not in obj or "constants" not in obj:
        raise SchemaError(path, "expected 'arity' and 'constants'")
    arity = obj["arity"]
    if not isinstance(arity, int) or arity < 1:
        raise SchemaError(f"{path}.arity", "expected a positive integer")
    table = {}
    for t, item in enumerate(obj["constants"]):
        where = f"{path}.constants[{t}]"
        if not isinstance(item, dict) or "args" not in item or "value" not in item:
            raise SchemaError(where, "expected {'args': [...], 'value': [...]}")
        args = []
        for k, idx in enumerate(item["args"]):
            if not isinstance(idx, int) or not 1 <= idx <= space.dim:
                raise SchemaError(f"{where}.args[{k}]",
                                  f"index out of range 1..{space.dim}")
            args.append(idx - 1)
        if any(a > b for a, b in zip(args, args[1:])):
            raise SchemaError(f"{where}.args", "indices must be non-decreasing")
        value = parse_element(space, item["value"], f"{where}.value")
        table[tuple(args)] = value
    try:
        return NaryStructure(space, arity, table)
    except Exception as ex:
        raise SchemaError(path, str(ex))


def structure_to_json(s):
    return {
        "schema": SCHEMA,
        "arity": s.arity,
        "constants": [
            {"args": [i + 1 for i in key], "value": element_to_json(value)}
            for key, value in sorted(s.table.items())
        ],
    }


# ---------------------------------------------------------------------------
# matrices


def parse_matrix(obj, dim, path="matrix"):
    rows = obj["matrix"] if isinstance(obj, dict) and "matrix" in obj else obj
    if isinstance(obj, dict):
        _check_schema(obj, path)
    if not isinstance(rows, list) or len(rows) != dim:
        raise SchemaError(path, f"expected {dim} rows")
    out = []
    for i, row in enumerate(rows):
        if len(row) != dim:
            raise SchemaError(f"{path}[{i}]", f"expected {dim} entries")
        out.append([parse_scalar(x, f"{path}[{i}][{j}]")
                    for j, x in enumerate(row)])
    return out


def matrix_to_json(mat):
    return {"schema": SCHEMA,
            "matrix": [[fmt_scalar(x) for x in row] for row in mat]}


# ---------------------------------------------------------------------------
# reports


def _witness_json(witness):
    if witness is None:
        return None
    return [i + 1 for i in witness]


def check_report_to_json(rep):
    residual = rep.residual
    if isinstance(residual, Element):
        residual = element_to_json(residual)
    elif isinstance(residual, Fraction):
        residual = fmt_scalar(residual)
    out = {
        "schema": SCHEMA,
        "check": rep.name,
        "pass": rep.passed,
        "witness": _witness_json(rep.witness),
        "residual": residual,
    }
    if rep.detail:
        out["detail"] = rep.detail
    if rep.violations and len(rep.violations) > 1:
        out["violations"] = [
            {"witness": _witness_json(w),
             "residual": element_to_json(r) if isinstance(r, Element)
             else fmt_scalar(r)}
            for w, r in rep.violations
        ]
    return out


def hodge_report_to_json(rep):
    return {
        "schema": SCHEMA,
        "m": rep.m,
        "degrees": [
            {"p": row.p, "dim": row.dim, "rank_d": row.rank_d,
             "rank_delta": row.rank_delta,
             "ker_laplacian": row.ker_laplacian,
             "cohomology": row.cohomology}
            for row in rep.degrees
        ],
        "total_dim": rep.total_dim,
        "rank_d": rep.rank_d,
        "rank_delta": rep.rank_delta,
        "ker_laplacian": rep.ker_laplacian,
        "cohomology_total": rep.cohomology_total,
        "direct_sum_ok": rep.direct_sum_ok,
        "kernel_intersection_ok": rep.kernel_intersection_ok,
        "homogeneous": rep.homogeneous,
    }


def qf_certificate_to_json(cert):
    return {
        "schema": SCHEMA,
        "pass": cert.passed,
        "witness": _witness_json(cert.witness),
        "residual": None if cert.residual is None else fmt_scalar(cert.residual),
        "phi_rank": cert.phi_rank,
        "odd_arity": cert.odd_arity,
    }


def ideal_report_to_json(rep):
    return {
        "found": rep.found,
        "basis": [element_to_json(b) for b in rep.basis],
        "method": rep.method,
        "status": rep.status,
        "rounds": rep.rounds,
    }


def canonical_form_to_json(cf):
    return {
        "schema": SCHEMA,
        "approx": True,
        "params": [float(p) for p in cf.params],
        "residual": cf.residual,
        "q": [[float(x) for x in row] for row in cf.q],
    }


def classification_record_to_json(rec):
    return {
        "schema": SCHEMA,
        "m": rec.m,
        "v": element_to_json(rec.v),
        "skew_rank": rec.skew_rank,
        "canonical_params": [float(p) for p in rec.canonical_params],
        "approx": True,
        "simple": rec.simple,
        "simple_method": rec.simple_method,
        "filippov": rec.filippov,
        "sh_jacobi": rec.sh_jacobi,
        "ideal": ideal_report_to_json(rec.ideal),
    }


def dumps(obj, pretty=False):
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def load_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as ex:
        raise SchemaError(path, f"cannot read file: {ex}")
    except json.JSONDecodeError as ex:
        raise SchemaError(f"{path}:{ex.lineno}:{ex.colno}", ex.msg)
