"""Built-in extension scenarios and the YAML scenario format.

A scenario file is a YAML mapping; every key is optional when ``base`` names
a catalog entry::

    base: bidisc-diagonal        # start from a catalog scenario
    name: my-run
    domain: {shape: bidisc, nodes: [32, 32]}
    submanifold: diagonal        # point0 | coordinate_line | diagonal | origin
    cutoff: smoothed_hinge,4,0.1 # or {kind: hinge, K: 8}
    degree: 4
    f: [1]                       # Y-coefficients; complex entries as [re, im]
    t_grid: "0:8:0.5"            # a:b:step (inclusive) or an explicit list
    duals: [[1]]                 # Y-functionals whose dual norms are tracked
    k_sweep: true
    tolerances: {rho: 1.0e-3, prop41: 1.0e-2}

Errors point at the offending line and column.
"""
from __future__ import annotations

import dataclasses
from pathlib import Path

import numpy as np
import yaml

from .bergman import ModelDomain, SubmanifoldSpec
from .certify import ExtensionScenario, Tolerances
from .cutoff import Cutoff
from .errors import ConfigError, ExtralabError, FeasibilityError, InputError


def parse_tgrid(text) -> tuple[float, ...]:
    """``"a:b:step"`` (endpoint included) or a comma-separated list."""
    text = str(text).strip()
    try:
        if ":" in text:
            a, b, step = (float(x) for x in text.split(":"))
            if step <= 0 or b < a:
                raise InputError(f"bad t-grid {text!r}: need a <= b and step > 0")
            n = int(np.floor((b - a) / step + 1e-9)) + 1
            return tuple(float(x) for x in np.round(a + step * np.arange(n), 12))
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"bad t-grid {text!r}; expected a:b:step") from None


def parse_complex_list(text) -> tuple[complex, ...]:
    """``"1,0,2+1j"`` -> coefficients."""
    try:
        return tuple(complex(x.strip().replace("i", "j")) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise InputError(f"bad coefficient list {text!r}") from None


def _scenario(name, m, kind, cutoff, degree, tgrid, rho_tol, f=(1.0,)):
    return ExtensionScenario(name, ModelDomain(m), SubmanifoldSpec(kind), cutoff, degree, f,
                             parse_tgrid(tgrid), Tolerances(rho=rho_tol))


CATALOG = {
    "disc-point": _scenario("disc-point", 1, "point0", Cutoff("hinge", 2.0), 12, "0:8:0.25", 1e-6),
    "bidisc-line": _scenario("bidisc-line", 2, "coordinate_line", Cutoff("smoothed_hinge", 4.0, 0.1),
                             5, "0:8:0.5", 1e-4),
    "bidisc-diagonal": _scenario("bidisc-diagonal", 2, "diagonal",
                                 Cutoff("smoothed_hinge", 4.0, 0.1), 4, "0:8:0.5", 1e-3),
    "bidisc-origin": _scenario("bidisc-origin", 2, "origin", Cutoff("hinge", 4.0), 2, "0:8:0.5",
                               1e-6),
}

CATALOG_NOTES = {
    "disc-point": "unit disc, Y = {0}, r = |z|^2, hinge K=2, degree 12, f = 1, t in 0:8:0.25",
    "bidisc-line": "bidisc, Y = {z2 = 0}, r = |z2|^2, smoothed hinge K=4 w=0.1, degree 5, f = 1",
    "bidisc-diagonal": "bidisc, Y = {z1 = z2}, r = |z1-z2|^2/4, smoothed hinge K=4, degree 4, f = 1",
    "bidisc-origin": "bidisc, Y = {0}, r = (|z1|^2+|z2|^2)/2 (codimension 2), hinge K=4, degree 2",
}

_KEYS = {"base", "name", "domain", "submanifold", "cutoff", "degree", "f", "t_grid", "duals",
         "k_sweep", "tolerances"}


def catalog_scenario(name: str) -> ExtensionScenario:
    try:
        return CATALOG[name]
    except KeyError:
        raise InputError(f"unknown scenario {name!r}; catalog: {sorted(CATALOG)}") from None


def _err(msg, node, source):
    mark = node.start_mark
    return ConfigError(msg, mark.line + 1, mark.column + 1, source)


def _coeffs(value, node, source, what):
    if not isinstance(value, list):
        raise _err(f"{what} must be a list", node, source)
    out = []
    for item in value:
        if isinstance(item, list) and len(item) == 2:
            out.append(complex(float(item[0]), float(item[1])))
        elif isinstance(item, (int, float)):
            out.append(complex(item))
        elif isinstance(item, str):
            out.append(complex(item.replace("i", "j")))
        else:
            raise _err(f"{what} entries must be numbers or [re, im] pairs", node, source)
    return tuple(out)


def scenario_from_mapping(text: str, source: str = "<config>") -> ExtensionScenario:
    """Parse YAML text into a scenario, reporting schema errors with positions."""
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            raise ConfigError(str(getattr(exc, "problem", exc)), mark.line + 1, mark.column + 1,
                              source) from None
        raise ConfigError(str(exc), source=source) from None
    if root is None or not isinstance(data, dict):
        raise ConfigError("scenario file must be a mapping", 1, 1, source)
    nodes = {k.value: v for k, v in root.value}
    keys = {k.value: k for k, _ in root.value}
    for key in data:
        if key not in _KEYS:
            raise _err(f"unknown key {key!r}; allowed: {sorted(_KEYS)}", keys[key], source)

    base = data.get("base")
    try:
        sc = catalog_scenario(base) if base else None
    except InputError as exc:
        raise _err(str(exc), nodes["base"], source) from None
    fields = {f.name: getattr(sc, f.name) for f in dataclasses.fields(ExtensionScenario)} if sc else {}

    def field_value(key, parse):
        if key not in data:
            return
        try:
            fields[key] = parse(data[key], nodes[key])
        except ConfigError:
            raise
        except (ExtralabError, ValueError, TypeError) as exc:
            raise _err(f"{key}: {exc}", nodes[key], source) from None

    field_value("name", lambda v, n: str(v))

    def domain(v, n):
        if not isinstance(v, dict):
            raise _err("domain must be a mapping with shape and nodes", n, source)
        shape = v.get("shape", "disc")
        if shape not in ("disc", "bidisc"):
            raise _err(f"domain shape must be disc or bidisc, got {shape!r}", n, source)
        nr, nt = v.get("nodes", [32, 32])
        return ModelDomain(1 if shape == "disc" else 2, int(nr), int(nt))

    field_value("domain", domain)
    field_value("submanifold", lambda v, n: SubmanifoldSpec(str(v)))

    def cutoff(v, n):
        if isinstance(v, dict):
            kind = v.get("kind", "smoothed_hinge")
            return Cutoff.from_triple(f"{kind},{v.get('K', 4.0)},{v.get('w', 0.1)}")
        return Cutoff.from_triple(str(v))

    field_value("cutoff", cutoff)

    def degree(v, n):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise _err("degree must be a nonnegative integer", n, source)
        return v

    field_value("degree", degree)
    field_value("f", lambda v, n: _coeffs(v, n, source, "f"))
    field_value("t_grid", lambda v, n: parse_tgrid(",".join(map(str, v)) if isinstance(v, list)
                                                   else v))
    field_value("duals", lambda v, n: tuple(_coeffs(x, n, source, "duals") for x in v))
    field_value("k_sweep", lambda v, n: bool(v))

    def tolerances(v, n):
        if not isinstance(v, dict):
            raise _err("tolerances must be a mapping", n, source)
        base_tol = fields.get("tolerances", Tolerances())
        bad = set(v) - {f.name for f in dataclasses.fields(Tolerances)}
        if bad:
            raise _err(f"unknown tolerance {sorted(bad)[0]!r}", n, source)
        return dataclasses.replace(base_tol, **{k: float(x) for k, x in v.items()})

    field_value("tolerances", tolerances)
    missing = [k for k in ("domain", "submanifold", "cutoff", "degree", "f", "t_grid")
               if k not in fields]
    if missing:
        raise ConfigError(f"missing keys {missing} (or give a catalog 'base')", 1, 1, source)
    fields.setdefault("name", Path(source).stem)
    try:
        return ExtensionScenario(**fields)
    except FeasibilityError as exc:
        node = nodes.get("f") or nodes.get("degree") or root
        raise _err(str(exc), node, source) from exc
    except ExtralabError as exc:
        node = nodes.get("t_grid") if "t-grid" in str(exc) else None
        raise _err(str(exc), node or root, source) from exc


def load_scenario(name_or_path: str) -> ExtensionScenario:
    """Catalog name or path to a YAML scenario file."""
    if name_or_path in CATALOG:
        return CATALOG[name_or_path]
    path = Path(name_or_path)
    if not path.exists():
        raise InputError(f"no catalog scenario or file named {name_or_path!r}; "
                         f"catalog: {sorted(CATALOG)}")
    return scenario_from_mapping(path.read_text(), str(path))


def with_overrides(sc: ExtensionScenario, degree=None, nodes=None, t_grid=None, cutoff=None,
                   tol=None, data=None) -> ExtensionScenario:
    """Apply command-line overrides; the scenario invariants are re-checked."""
    changes = {}
    if degree is not None:
        changes["degree"] = int(degree)
    if nodes is not None:
        changes["domain"] = sc.domain.with_nodes(*nodes)
    if t_grid is not None:
        changes["t_grid"] = tuple(t_grid)
    if cutoff is not None:
        changes["cutoff"] = cutoff
    if tol is not None:
        changes["tolerances"] = dataclasses.replace(sc.tolerances, rho=float(tol))
    if data is not None:
        changes["f"] = tuple(data)
    return dataclasses.replace(sc, **changes) if changes else sc
