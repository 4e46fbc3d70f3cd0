"""Loading and saving variable catalogs, inference systems and training data.

Catalog documents are JSON with a fixed layout (see schema/catalog.schema.json).
Serialization is canonical: fixed key order, two-space indent, floats written
in shortest round-trip form, one trailing newline.  Saving a just-loaded
catalog therefore reproduces the file byte for byte, which makes the format
safe to diff and to keep under version control.

Schema problems are reported as SchemaError with a JSON-pointer-style path
("/variables/0/terms/1/mf/a") so the offending node can be found directly.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .elicit import TrainingSet
from .errors import DatasetError, DefinitionError, SchemaError
from .inference import FuzzyInferenceSystem
from .membership import CrispLabel, Gauss2, Trapezoid
from .rules import RuleSyntaxError, RuleValidationError, format_rules, parse_rules
from .variables import VARIABLE_KINDS, CodeList, Interval, LinguisticVariable

SCHEMA_VERSION = 1


@dataclass
class Catalog:
    """An ordered collection of variables, optionally with an inference system."""

    variables: dict[str, LinguisticVariable]
    metadata: dict = field(default_factory=dict)
    fis: FuzzyInferenceSystem | None = None

    def __post_init__(self):
        for name, var in self.variables.items():
            if name != var.name:
                raise DefinitionError(
                    f"catalog key '{name}' does not match variable name '{var.name}'"
                )


def _num(value: float) -> float:
    # float() unifies ints and numpy scalars; the == 0 check drops -0.0
    value = float(value)
    return 0.0 if value == 0.0 else value


def _mf_to_json(mf) -> dict:
    if isinstance(mf, Trapezoid):
        return {
            "type": "trapezoid",
            "a": _num(mf.a),
            "b": _num(mf.b),
            "c": _num(mf.c),
            "d": _num(mf.d),
        }
    if isinstance(mf, Gauss2):
        return {
            "type": "gauss2",
            "alpha1": _num(mf.alpha1),
            "beta1": _num(mf.beta1),
            "gamma1": _num(mf.gamma1),
            "alpha2": _num(mf.alpha2),
            "beta2": _num(mf.beta2),
            "gamma2": _num(mf.gamma2),
        }
    if isinstance(mf, CrispLabel):
        return {"type": "crisp", "levels": sorted(mf.levels)}
    raise TypeError(f"cannot serialize membership function {mf!r}")


def _variable_to_json(var: LinguisticVariable) -> dict:
    if isinstance(var.domain, Interval):
        domain = [_num(var.domain.lo), _num(var.domain.hi)]
    else:
        domain = {"codes": list(var.domain.codes)}
    return {
        "name": var.name,
        "kind": var.kind,
        "domain": domain,
        "terms": [{"name": t, "mf": _mf_to_json(mf)} for t, mf in var.terms.items()],
    }


def catalog_to_doc(catalog: Catalog) -> dict:
    """The plain JSON document for a catalog, keys in canonical order."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "metadata": catalog.metadata,
        "variables": [_variable_to_json(v) for v in catalog.variables.values()],
    }
    if catalog.fis is not None:
        doc["fis"] = {
            "inputs": list(catalog.fis.inputs),
            "outputs": list(catalog.fis.outputs),
            "rules": format_rules(catalog.fis.rules),
            "defuzz_resolution": catalog.fis.defuzz_resolution,
        }
    return doc


def dumps_catalog(catalog: Catalog) -> str:
    """Canonical text form; stable byte-for-byte across round trips."""
    return json.dumps(catalog_to_doc(catalog), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def save_catalog(catalog: Catalog, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_catalog(catalog))


def _want(node, types, path, what):
    if not isinstance(node, types):
        raise SchemaError(path, f"expected {what}, got {type(node).__name__}")
    return node


def _want_number(node, path) -> float:
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(node).__name__}")
    if not math.isfinite(node):
        raise SchemaError(path, f"expected a finite number, got {node!r}")
    return float(node)


def _want_str(node, path) -> str:
    if not isinstance(node, str):
        raise SchemaError(path, f"expected a string, got {type(node).__name__}")
    return node


def _get(obj: dict, key: str, path: str):
    if key not in obj:
        raise SchemaError(path, f"missing required key '{key}'")
    return obj[key]


def _mf_from_json(node, path):
    node = _want(node, dict, path, "an object")
    mtype = _want_str(_get(node, "type", path), f"{path}/type")
    try:
        if mtype == "trapezoid":
            _check_keys(node, {"type", "a", "b", "c", "d"}, path)
            return Trapezoid(
                a=_want_number(_get(node, "a", path), f"{path}/a"),
                b=_want_number(_get(node, "b", path), f"{path}/b"),
                c=_want_number(_get(node, "c", path), f"{path}/c"),
                d=_want_number(_get(node, "d", path), f"{path}/d"),
            )
        if mtype == "gauss2":
            names = ("alpha1", "beta1", "gamma1", "alpha2", "beta2", "gamma2")
            _check_keys(node, {"type", *names}, path)
            return Gauss2(
                **{n: _want_number(_get(node, n, path), f"{path}/{n}") for n in names}
            )
        if mtype == "crisp":
            _check_keys(node, {"type", "levels"}, path)
            levels = _want(_get(node, "levels", path), list, f"{path}/levels", "an array")
            if not levels:
                raise SchemaError(f"{path}/levels", "needs at least one code")
            return CrispLabel(
                _want_str(lv, f"{path}/levels/{i}") for i, lv in enumerate(levels)
            )
    except DefinitionError as exc:
        raise SchemaError(path, str(exc)) from None
    raise SchemaError(
        f"{path}/type", f"unknown membership type {mtype!r} (use trapezoid, gauss2 or crisp)"
    )


def _check_keys(node: dict, allowed: set, path: str) -> None:
    extra = sorted(set(node) - allowed)
    if extra:
        raise SchemaError(path, f"unknown key '{extra[0]}'")


def _variable_from_json(node, path) -> LinguisticVariable:
    node = _want(node, dict, path, "an object")
    _check_keys(node, {"name", "kind", "domain", "terms"}, path)
    name = _want_str(_get(node, "name", path), f"{path}/name")
    kind = _want_str(_get(node, "kind", path), f"{path}/kind")
    if kind not in VARIABLE_KINDS:
        raise SchemaError(
            f"{path}/kind", f"unknown kind {kind!r} (use one of {', '.join(VARIABLE_KINDS)})"
        )

    dom_node = _get(node, "domain", path)
    dom_path = f"{path}/domain"
    try:
        if isinstance(dom_node, list):
            if len(dom_node) != 2:
                raise SchemaError(dom_path, "interval domain must be a [lo, hi] pair")
            domain = Interval(
                _want_number(dom_node[0], f"{dom_path}/0"),
                _want_number(dom_node[1], f"{dom_path}/1"),
            )
        elif isinstance(dom_node, dict):
            _check_keys(dom_node, {"codes"}, dom_path)
            codes = _want(_get(dom_node, "codes", dom_path), list, f"{dom_path}/codes", "an array")
            domain = CodeList(
                _want_str(c, f"{dom_path}/codes/{i}") for i, c in enumerate(codes)
            )
        else:
            raise SchemaError(dom_path, "domain must be a [lo, hi] pair or {\"codes\": [...]}")
    except DefinitionError as exc:
        raise SchemaError(dom_path, str(exc)) from None

    terms_node = _want(_get(node, "terms", path), list, f"{path}/terms", "an array")
    terms = {}
    for i, term_node in enumerate(terms_node):
        term_path = f"{path}/terms/{i}"
        term_node = _want(term_node, dict, term_path, "an object")
        _check_keys(term_node, {"name", "mf"}, term_path)
        term_name = _want_str(_get(term_node, "name", term_path), f"{term_path}/name")
        if term_name in terms:
            raise SchemaError(f"{term_path}/name", f"duplicate term name '{term_name}'")
        terms[term_name] = _mf_from_json(_get(term_node, "mf", term_path), f"{term_path}/mf")

    try:
        return LinguisticVariable(name=name, kind=kind, domain=domain, terms=terms)
    except DefinitionError as exc:
        raise SchemaError(path, str(exc)) from None


def catalog_from_doc(doc) -> Catalog:
    """Build a Catalog from a parsed JSON document, validating as it goes."""
    doc = _want(doc, dict, "/", "an object")
    _check_keys(doc, {"schema_version", "metadata", "variables", "fis"}, "/")
    version = _get(doc, "schema_version", "/")
    if version != SCHEMA_VERSION:
        raise SchemaError(
            "/schema_version", f"unsupported schema version {version!r} (expected {SCHEMA_VERSION})"
        )
    metadata = doc.get("metadata", {})
    metadata = _want(metadata, dict, "/metadata", "an object")

    var_nodes = _want(_get(doc, "variables", "/"), list, "/variables", "an array")
    if not var_nodes:
        raise SchemaError("/variables", "needs at least one variable")
    variables: dict[str, LinguisticVariable] = {}
    for i, node in enumerate(var_nodes):
        var = _variable_from_json(node, f"/variables/{i}")
        if var.name in variables:
            raise SchemaError(f"/variables/{i}/name", f"duplicate variable name '{var.name}'")
        variables[var.name] = var

    fis = None
    if "fis" in doc:
        fis = _fis_from_json(doc["fis"], "/fis", variables)
    return Catalog(variables=variables, metadata=metadata, fis=fis)


def _fis_from_json(node, path, variables) -> FuzzyInferenceSystem:
    node = _want(node, dict, path, "an object")
    _check_keys(node, {"inputs", "outputs", "rules", "defuzz_resolution"}, path)

    def name_list(key):
        raw = _want(_get(node, key, path), list, f"{path}/{key}", "an array")
        names = []
        for i, n in enumerate(raw):
            n = _want_str(n, f"{path}/{key}/{i}")
            if n not in variables:
                raise SchemaError(f"{path}/{key}/{i}", f"unknown variable '{n}'")
            names.append(n)
        return names

    inputs = name_list("inputs")
    outputs = name_list("outputs")
    rules_text = _want_str(_get(node, "rules", path), f"{path}/rules")
    resolution = node.get("defuzz_resolution", 1001)
    if isinstance(resolution, bool) or not isinstance(resolution, int):
        raise SchemaError(f"{path}/defuzz_resolution", "expected an integer")
    try:
        rules = parse_rules(rules_text)
    except RuleSyntaxError as exc:
        raise SchemaError(f"{path}/rules", str(exc)) from None
    try:
        return FuzzyInferenceSystem(
            inputs={n: variables[n] for n in inputs},
            outputs={n: variables[n] for n in outputs},
            rules=rules,
            defuzz_resolution=resolution,
        )
    except RuleValidationError as exc:
        raise SchemaError(f"{path}/rules", str(exc)) from None
    except DefinitionError as exc:
        raise SchemaError(path, str(exc)) from None


def load_catalog(path) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("/", f"not valid JSON: {exc}") from None
    return catalog_from_doc(doc)


def save_fis(fis: FuzzyInferenceSystem, path, metadata: dict | None = None) -> None:
    """Write an inference system as a catalog carrying all its variables."""
    catalog = Catalog(
        variables={**fis.inputs, **fis.outputs},
        metadata=metadata or {},
        fis=fis,
    )
    save_catalog(catalog, path)


def load_fis(path) -> FuzzyInferenceSystem:
    """Load a catalog and return its inference system; error if it has none."""
    catalog = load_catalog(path)
    if catalog.fis is None:
        raise SchemaError("/fis", "document does not define an inference system")
    return catalog.fis


def load_training_csv(path) -> TrainingSet:
    """Read observations from a CSV with header ``label,value`` or ``value``.

    Labels are carried through as metadata.  Problems are reported with
    1-based row numbers counting the header as row 1.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: file is empty") from None
        cols = [h.strip().lower() for h in header]
        if cols == ["label", "value"]:
            has_label = True
        elif cols == ["value"]:
            has_label = False
        else:
            raise DatasetError(
                f"{path}: header must be 'label,value' or 'value', got {','.join(header)!r}"
            )
        labels: list[str] = []
        values: list[float] = []
        for row_no, row in enumerate(reader, start=2):
            if not any(cell.strip() for cell in row):
                continue
            expected = 2 if has_label else 1
            if len(row) != expected:
                raise DatasetError(
                    f"{path}: row {row_no}: expected {expected} column(s), got {len(row)}"
                )
            raw = row[-1].strip()
            try:
                value = float(raw)
            except ValueError:
                raise DatasetError(
                    f"{path}: row {row_no}: could not parse {raw!r} as a number"
                ) from None
            if not math.isfinite(value):
                raise DatasetError(f"{path}: row {row_no}: non-finite value {raw!r}")
            values.append(value)
            if has_label:
                labels.append(row[0].strip())
    if not values:
        raise DatasetError(f"{path}: no data rows")
    return TrainingSet(np.array(values), tuple(labels) if has_label else None)
