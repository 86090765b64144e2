from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional, TYPE_CHECKING

from snc_lab.utils.errors import DocumentError
from snc_lab.utils.rationals import format_rational, parse_rational

if TYPE_CHECKING:
    from snc_lab.pair_properties import DigraphPair, WeightVector


@dataclass
class PairDocument:
    """On-disk form of a digraph pair, laid out like the tables of the fixtures.

    ``a`` and ``b`` hold one adjacency list per vertex with 1-based labels.
    Self-loops are listed explicitly. ``weights`` holds exact rationals as
    strings (``"7"``, ``"1/3"``).
    """

    n: int
    a: list[list[int]]
    b: list[list[int]]
    weights: Optional[list[str]] = None
    labels: Optional[list[str]] = None
    extra: dict = field(default_factory=dict)  # unknown top-level keys, kept verbatim

    def __str__(self) -> str:
        return f"<PairDocument n={self.n} weighted={self.weights is not None}>"

    # --- parsing ---

    @classmethod
    def from_json(cls, text: str) -> PairDocument:
        """Parse a UTF-8 JSON document.

        Raises:
            DocumentError: on JSON syntax errors (``line L, column C``) or
                structural problems (JSON path of the offending entry).
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError(f"line {e.lineno}, column {e.colno}", e.msg) from e
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Any) -> PairDocument:
        if not isinstance(data, dict):
            raise DocumentError("$", "top level must be a JSON object")
        for key in ("n", "a", "b"):
            if key not in data:
                raise DocumentError("$", f"missing required key '{key}'")

        n = data["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise DocumentError("n", f"expected a non-negative integer, got {n!r}")

        a = cls._parse_adjacency(data["a"], "a", n)
        b = cls._parse_adjacency(data["b"], "b", n)

        weights = None
        if data.get("weights") is not None:
            raw = data["weights"]
            if not isinstance(raw, list) or len(raw) != n:
                raise DocumentError("weights", f"expected a list of {n} rationals")
            weights = []
            for i, item in enumerate(raw):
                try:
                    value = parse_rational(item)
                except ValueError as e:
                    raise DocumentError(f"weights[{i}]", str(e)) from e
                if value < 0:
                    raise DocumentError(f"weights[{i}]", f"weight {item!r} is negative")
                weights.append(format_rational(value))

        labels = None
        if data.get("labels") is not None:
            raw = data["labels"]
            if not isinstance(raw, list) or len(raw) != n:
                raise DocumentError("labels", f"expected a list of {n} strings")
            labels = [str(label) for label in raw]

        extra = {k: v for k, v in data.items() if k not in ("n", "a", "b", "weights", "labels")}
        return cls(n=n, a=a, b=b, weights=weights, labels=labels, extra=extra)

    @staticmethod
    def _parse_adjacency(raw: Any, name: str, n: int) -> list[list[int]]:
        if not isinstance(raw, list) or len(raw) != n:
            raise DocumentError(name, f"expected a list of {n} adjacency lists")
        adjacency = []
        for i, row in enumerate(raw):
            if not isinstance(row, list):
                raise DocumentError(f"{name}[{i}]", "expected a list of vertex labels")
            seen = set()
            for j, label in enumerate(row):
                if isinstance(label, bool) or not isinstance(label, int):
                    raise DocumentError(f"{name}[{i}][{j}]", f"expected an integer label, got {label!r}")
                if not 1 <= label <= n:
                    raise DocumentError(f"{name}[{i}][{j}]", f"label {label} outside 1..{n}")
                if label in seen:
                    raise DocumentError(f"{name}[{i}][{j}]", f"duplicate label {label}")
                seen.add(label)
            adjacency.append(list(row))
        return adjacency

    # --- conversion ---

    def to_pair(self) -> DigraphPair:
        from snc_lab.pair_properties import DigraphPair
        from snc_lab.relation import Relation

        return DigraphPair(
            Relation.from_adjacency([[v - 1 for v in row] for row in self.a]),
            Relation.from_adjacency([[v - 1 for v in row] for row in self.b]),
        )

    def to_weights(self) -> Optional[WeightVector]:
        from snc_lab.pair_properties import WeightVector

        if self.weights is None:
            return None
        return WeightVector(tuple(parse_rational(w) for w in self.weights))

    @classmethod
    def from_pair(
        cls,
        pair: DigraphPair,
        weights: Optional[WeightVector] = None,
        labels: Optional[list[str]] = None,
    ) -> PairDocument:
        return cls(
            n=pair.n,
            a=[[v + 1 for v in row] for row in pair.a.to_adjacency()],
            b=[[v + 1 for v in row] for row in pair.b.to_adjacency()],
            weights=weights.to_strings() if weights is not None else None,
            labels=list(labels) if labels is not None else None,
        )

    def to_dict(self) -> dict:
        data = {"n": self.n, "a": self.a, "b": self.b}
        if self.weights is not None:
            data["weights"] = self.weights
        if self.labels is not None:
            data["labels"] = self.labels
        data.update(self.extra)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)
