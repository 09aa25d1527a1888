"""Tabular artifacts and their CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["ARTIFACT_KINDS", "TableArtifact", "format_value", "render", "write_atomic"]

# kind -> (producing command, description)
ARTIFACT_KINDS = {
    "table1": ("pauli-table --table 1", "Dirac vs Pauli energies and their MHz difference"),
    "table2": ("pauli-table --table 2", "Coulomb and Breit corrections, EP' with Breit terms"),
    "fig1": ("dirac-solve --rep fem --profile", "ground-state channel profiles y^2(rho)"),
    "fig2": ("anomalous", "anomalous energies E_i against rho_i"),
    "fig3": ("anomalous --rep fem --profiles", "anomalous FEM channel profiles"),
    "fig4": ("anomalous --rep momentum --profiles", "numerical vs analytic DVR functions"),
    "fig5": ("coupling-profile", "large/small components of the coupled ground state"),
    "anomalous_catalog": ("anomalous --catalog", "J = 0 anomalous families with Gaunt shifts"),
    "bs_overlaps": ("bs-project", "projected Bethe-Salpeter spectrum with family overlaps"),
    "spectrum": ("dirac-solve", "bound-state eigenvalues with channel classification"),
    "addition": ("verify-addition", "addition-theorem residuals against j_max"),
}


@dataclass
class TableArtifact:
    """Named table with column headers, rows and a provenance record."""

    kind: str
    columns: list
    rows: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ARTIFACT_KINDS:
            raise ValueError(f"unknown artifact kind {self.kind!r}")

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, expected {len(self.columns)}")
        self.rows.append(list(values))


def format_value(v) -> str:
    """Floats in 17-significant-digit scientific notation; strings as given."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.16e}"
    return str(v)


def _jsonable(v):
    if isinstance(v, float):
        return float(format_value(v))
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    return str(v)


def render(artifact: TableArtifact, fmt: str = "csv") -> str:
    """Serialize; output depends only on the artifact contents."""
    if fmt == "csv":
        buf = io.StringIO()
        for key in sorted(artifact.provenance):
            buf.write(f"# {key}: {json.dumps(artifact.provenance[key], sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(artifact.columns)
        for row in artifact.rows:
            w.writerow([format_value(v) for v in row])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "kind": artifact.kind,
            "provenance": artifact.provenance,
            "columns": artifact.columns,
            "rows": [[_jsonable(v) for v in row] for row in artifact.rows],
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")


def write_atomic(path, text: str) -> Path:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    umask = os.umask(0)
    os.umask(umask)
    try:
        os.chmod(tmp, 0o666 & ~umask)
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
