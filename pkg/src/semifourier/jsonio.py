"""JSON conventions shared by the CLI, the shipped example files and tests.

Complex numbers serialize as [re, im] pairs and matrices as row-major nested
arrays.  Semigroups are addressable inline, as "builtin:family:size"
references, or as paths to semigroup files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .harmonic import MatrixMap
from .maps import Supermap
from .positivity import Dilation, MatrixAlgebraRep
from .semigroup import SemigroupTable, from_builtin, inverse_structure


def complex_to_json(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def matrix_to_json(m) -> list[list[list[float]]]:
    a = np.asarray(m, dtype=complex)
    return [[complex_to_json(v) for v in row] for row in a]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def semigroup_to_json(t: SemigroupTable) -> dict:
    return {
        "name": t.name,
        "elements": list(t.element_names),
        "zero": None if t.zero is None else t.element_names[t.zero],
        "table": t.table.tolist(),
    }


def semigroup_from_json(obj: dict) -> SemigroupTable:
    names = tuple(str(x) for x in obj["elements"])
    zero = obj.get("zero")
    return SemigroupTable(
        name=str(obj.get("name", "semigroup")),
        element_names=names,
        zero=None if zero is None else names.index(zero),
        table=np.asarray(obj["table"], dtype=np.int32),
    )


def resolve_semigroup(ref, base_dir: Path | None = None) -> SemigroupTable:
    """Accept an inline object, a builtin reference, or a file path."""
    if isinstance(ref, dict):
        return semigroup_from_json(ref)
    ref = str(ref)
    if ref.startswith("builtin:"):
        return from_builtin(ref)
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    with open(path) as fh:
        return semigroup_from_json(json.load(fh))


def map_to_json(f: MatrixMap, semigroup_ref: str | None = None) -> dict:
    t = f.structure.table
    return {
        "semigroup": semigroup_ref if semigroup_ref is not None else semigroup_to_json(t),
        "target_dim": f.dim,
        "basis": f.basis,
        "values": {
            t.element_names[s]: matrix_to_json(f.values[s]) for s in f.structure.nonzero
        },
    }


def map_from_json(obj: dict, base_dir: Path | None = None) -> MatrixMap:
    table = resolve_semigroup(obj["semigroup"], base_dir)
    structure = inverse_structure(table)
    n = int(obj["target_dim"])
    vals = np.zeros((table.order, n, n), dtype=complex)
    for name, rows in obj["values"].items():
        vals[table.index_of(name)] = matrix_from_json(rows)
    return MatrixMap(structure, n, str(obj["basis"]), vals)


def load_map(path: str | Path) -> MatrixMap:
    path = Path(path)
    with open(path) as fh:
        return map_from_json(json.load(fh), base_dir=path.parent)


def save_map(f: MatrixMap, path: str | Path, semigroup_ref: str | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(map_to_json(f, semigroup_ref), fh, indent=2, sort_keys=True)
        fh.write("\n")


def rep_to_json(rho: MatrixAlgebraRep) -> dict:
    return {
        "source_dim": rho.m,
        "rep_dim": rho.dim,
        "matrices": {
            f"e_{i + 1}_{j + 1}": matrix_to_json(rho.matrices[i, j])
            for i in range(rho.m)
            for j in range(rho.m)
        },
    }


def rep_from_json(obj: dict) -> MatrixAlgebraRep:
    m = int(obj["source_dim"])
    d = int(obj["rep_dim"])
    mats = np.zeros((m, m, d, d), dtype=complex)
    for i in range(m):
        for j in range(m):
            mats[i, j] = matrix_from_json(obj["matrices"][f"e_{i + 1}_{j + 1}"])
    return MatrixAlgebraRep(m, d, mats)


def load_rep(path: str | Path) -> MatrixAlgebraRep:
    with open(path) as fh:
        return rep_from_json(json.load(fh))


def supermap_to_json(t: Supermap) -> dict:
    action = {}
    for i in range(t.m1):
        for j in range(t.m1):
            for k in range(t.n2):
                for l in range(t.n2):
                    key = f"{i + 1},{j + 1},{k + 1},{l + 1}"
                    action[key] = [
                        [matrix_to_json(t.action[i, j, k, l, p, q]) for q in range(t.m3)]
                        for p in range(t.m3)
                    ]
    return {"dims": [t.m1, t.n2, t.m3, t.n4], "action": action}


def supermap_from_json(obj: dict) -> Supermap:
    m1, n2, m3, n4 = (int(x) for x in obj["dims"])
    action = np.zeros((m1, m1, n2, n2, m3, m3, n4, n4), dtype=complex)
    for key, rows in obj["action"].items():
        i, j, k, l = (int(x) - 1 for x in key.split(","))
        for p in range(m3):
            for q in range(m3):
                action[i, j, k, l, p, q] = matrix_from_json(rows[p][q])
    return Supermap(m1, n2, m3, n4, action)


def irreps_to_json(reps) -> dict:
    """Audit export for a set of representations (group or induced)."""
    dims = []
    chars = []
    mats = {}
    for idx, rep in enumerate(reps):
        dims.append(rep.dim)
        if hasattr(rep, "irrep_id"):
            key = rep.irrep_id
            names = rep.structure.table.element_names
            elements = rep.structure.nonzero
        else:
            key = f"rho{idx}"
            names = rep.group.element_names
            elements = range(rep.group.order)
        chars.append([complex_to_json(np.trace(rep.matrices[s])) for s in elements])
        mats[key] = {names[s]: matrix_to_json(rep.matrices[s]) for s in elements}
    return {"dims": dims, "characters": chars, "matrices": mats}


def dilation_to_json(d: Dilation, structure, names=True) -> dict:
    t = structure.table
    return {
        "dilation_dim": d.dim,
        "v": matrix_to_json(d.v),
        "pi": {t.element_names[s]: matrix_to_json(d.pi[s]) for s in structure.nonzero},
        "residuals": {
            "reconstruction": d.reconstruction_residual,
            "identity": d.identity_residual,
            "multiplicativity": d.multiplicativity_residual,
            "star": d.star_residual,
        },
    }
