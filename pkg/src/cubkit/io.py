"""Serialization of cubature rules (JSON and CSV).

JSON floats are written with Python's shortest round-trip repr, so
``parse(serialize(doc)) == doc`` bit for bit. CSV rows use ``%.17g``, which
also round-trips every double.

CSV columns, in order: ``x, y, weight, j, k, orbit``.
"""

import csv
import io
import json
from dataclasses import asdict, dataclass, field

from cubkit.errors import InputError

SCHEMA_VERSION = "1"
CSV_COLUMNS = ("x", "y", "weight", "j", "k", "orbit")


@dataclass
class RuleDocument:
    spec: dict
    m: int
    kind: str
    degree_claimed: int
    nodes: list
    degree_verified: int = None
    metadata: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def from_rule(cls, rule, degree_verified=None, metadata=None):
        s = rule.spec
        nodes = [
            {"x": float(x), "y": float(y), "weight": float(w),
             "j": int(o[0]), "k": int(o[1]), "orbit": int(o[2])}
            for x, y, w, o in zip(rule.x, rule.y, rule.weights, rule.orbits)
        ]
        return cls(
            spec={"alpha": s.alpha, "beta": s.beta, "sigma": s.sigma},
            m=int(rule.m),
            kind=rule.kind,
            degree_claimed=int(rule.degree),
            nodes=nodes,
            degree_verified=None if degree_verified is None else int(degree_verified),
            metadata=dict(metadata or {}),
        )

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise InputError(f"unsupported schema_version {data.get('schema_version')!r}")
        return cls(**data)

    def to_csv(self):
        buf = io.StringIO()
        buf.write(",".join(CSV_COLUMNS) + "\n")
        for nd in self.nodes:
            buf.write("%.17g,%.17g,%.17g,%d,%d,%d\n"
                      % (nd["x"], nd["y"], nd["weight"], nd["j"], nd["k"], nd["orbit"]))
        return buf.getvalue()


def nodes_from_csv(text):
    """Node list back from :meth:`RuleDocument.to_csv` output."""
    rows = csv.DictReader(io.StringIO(text))
    if tuple(rows.fieldnames or ()) != CSV_COLUMNS:
        raise InputError(f"expected CSV columns {CSV_COLUMNS}, got {rows.fieldnames}")
    out = []
    for r in rows:
        out.append({"x": float(r["x"]), "y": float(r["y"]), "weight": float(r["weight"]),
                    "j": int(r["j"]), "k": int(r["k"]), "orbit": int(r["orbit"])})
    return out
