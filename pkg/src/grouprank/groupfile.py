"""The versioned JSON group-file format.

Everything is exact: field elements are length-m coefficient vectors,
rationals are [numerator, denominator] integer pairs, and no decimal floats
appear anywhere, so files round-trip bit-exactly.
"""

import json

from .errors import GroupRankError, SchemaError
from .matrix import Mat
from .numberfield import NumberFieldSpec, QF

SCHEMA_VERSION = 1


def _expect(cond, path, message):
    if not cond:
        raise SchemaError(path, message)


def parse_group(obj, origin="<group>"):
    """Validate a decoded group object and build (spec, generators, name)."""
    _expect(isinstance(obj, dict), origin, "group file must be a JSON object")
    _expect(obj.get("schema") == SCHEMA_VERSION, origin + ".schema",
            "unsupported schema version %r (expected %d)" % (obj.get("schema"), SCHEMA_VERSION))
    field = obj.get("field")
    _expect(isinstance(field, dict), origin + ".field", "missing field object")
    minpoly = field.get("minpoly")
    _expect(isinstance(minpoly, list) and len(minpoly) >= 2, origin + ".field.minpoly",
            "minpoly must be a list of at least two integers")
    _expect(all(isinstance(c, int) for c in minpoly), origin + ".field.minpoly",
            "minpoly coefficients must be integers")
    _expect(minpoly[-1] == 1, origin + ".field.minpoly", "minpoly must be monic")
    try:
        spec = NumberFieldSpec(tuple(minpoly))
    except GroupRankError as exc:
        raise SchemaError(origin + ".field.minpoly", str(exc))
    m = spec.degree
    raw_gens = obj.get("generators")
    _expect(isinstance(raw_gens, list) and raw_gens, origin + ".generators",
            "generators must be a nonempty list")
    gens = []
    n = None
    for gi, rows in enumerate(raw_gens):
        gpath = "%s.generators[%d]" % (origin, gi)
        _expect(isinstance(rows, list) and rows, gpath, "matrix must be a nonempty list of rows")
        if n is None:
            n = len(rows)
        _expect(len(rows) == n, gpath, "matrices must all be %d x %d" % (n, n))
        mat_rows = []
        for ri, row in enumerate(rows):
            rpath = "%s[%d]" % (gpath, ri)
            _expect(isinstance(row, list) and len(row) == n, rpath,
                    "row must have %d entries" % n)
            out_row = []
            for ci, entry in enumerate(row):
                epath = "%s[%d]" % (rpath, ci)
                _expect(isinstance(entry, list) and len(entry) == m, epath,
                        "entry must list %d rational coefficients" % m)
                coeffs = []
                for pi, pair in enumerate(entry):
                    ppath = "%s[%d]" % (epath, pi)
                    _expect(isinstance(pair, list) and len(pair) == 2, ppath,
                            "rational must be a [numerator, denominator] pair")
                    num, den = pair
                    _expect(isinstance(num, int) and isinstance(den, int), ppath,
                            "numerator and denominator must be integers")
                    _expect(den != 0, ppath, "denominator must be nonzero")
                    coeffs.append(QF(num, den))
                out_row.append(tuple(coeffs))
            mat_rows.append(out_row)
        g = Mat(spec, mat_rows)
        if spec.is_zero(g.det()):
            raise SchemaError(gpath, "generator is singular")
        gens.append(g)
    name = obj.get("name")
    if name is not None:
        _expect(isinstance(name, str), origin + ".name", "name must be a string")
    return spec, gens, name


def load_group(path):
    """Load and validate a group file; returns (spec, generators, name)."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(str(path), "invalid JSON: %s" % exc)
    return parse_group(obj, origin=str(path))


def group_to_obj(spec, gens, name=None):
    obj = {
        "schema": SCHEMA_VERSION,
        "field": {"minpoly": [int(c) for c in spec.minpoly]},
        "generators": [
            [[[[int(c.numerator), int(c.denominator)] for c in entry]
              for entry in row] for row in g.rows]
            for g in gens
        ],
    }
    if name:
        obj["name"] = name
    return obj


def dump_group(spec, gens, path, name=None):
    with open(path, "w") as fh:
        json.dump(group_to_obj(spec, gens, name), fh)
        fh.write("\n")
