from pathlib import Path
from typing import Optional, Union

from loguru import logger

from snc_lab.blowup import BlowupMap, blow_up_pair
from snc_lab.fixtures import load_fixture
from snc_lab.losing_density import Density, compute_losing_density
from snc_lab.pair_properties import (
    DigraphPair,
    InequalityReport,
    Variant,
    WeightVector,
    check_identity_hypothesis,
    check_tournament_pair,
    product_inequality_report,
    wsnp_report,
)
from snc_lab.theorem_engine import TheoremCertificate, find_witness
from snc_lab.utils.data import PairDocument
from snc_lab.utils.errors import PreconditionError


class PairLab:
    """One digraph pair, its optional weights, and every check that applies to it."""

    VERSION: str = "0.1.0"

    def __init__(
        self,
        pair: DigraphPair,
        weights: Optional[WeightVector] = None,
        labels: Optional[list[str]] = None,
        source: Optional[str] = None,
    ):
        """
        Args:
            pair: The pair ``(A, B)``.
            weights: Exact non-negative weights; None means the unweighted setting.
            labels: Optional display names, one per vertex.
            source: Where the pair came from (file path or fixture name), for log lines.
        """
        if weights is not None and len(weights) != pair.n:
            raise PreconditionError(
                f"Weights have {len(weights)} entries but the pair has {pair.n} vertices."
            )
        self.pair = pair
        self.weights = weights
        self.labels = labels
        self.source = source or "<memory>"
        logger.debug(f"PairLab ready for {self.pair} from {self.source}")

    @classmethod
    def from_document(cls, document: PairDocument, source: Optional[str] = None) -> "PairLab":
        return cls(document.to_pair(), document.to_weights(), document.labels, source)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "PairLab":
        path = Path(path)
        logger.debug(f"Reading pair document {path}")
        text = path.read_text(encoding="utf-8")
        return cls.from_document(PairDocument.from_json(text), source=str(path))

    @classmethod
    def from_fixture(cls, fixture_id: int) -> "PairLab":
        fixture = load_fixture(fixture_id)
        return cls(fixture.pair, fixture.weights, source=f"fixture {fixture_id}")

    @property
    def n(self) -> int:
        return self.pair.n

    def hypotheses(self) -> dict:
        return {
            "identity": check_identity_hypothesis(self.pair),
            "tournament_pair": check_tournament_pair(self.pair),
            "a_subset_b": self.pair.a <= self.pair.b,
            "b_subset_a": self.pair.b <= self.pair.a,
            "a_oriented": self.pair.a.strip_loops().is_oriented(),
            "b_oriented": self.pair.b.strip_loops().is_oriented(),
        }

    def check(self, variant: Variant = Variant.UNION, unweighted: bool = False) -> InequalityReport:
        weights = None if unweighted else self.weights
        return product_inequality_report(self.pair, weights, Variant(variant))

    def wsnp(self, unweighted: bool = False) -> InequalityReport:
        """WSNP report on the oriented graph ``A`` without its loops."""
        weights = None if unweighted else self.weights
        return wsnp_report(self.pair.a.strip_loops(), weights)

    def blow_up(self) -> tuple["PairLab", BlowupMap]:
        """Unweighted blow-up by the attached positive integer weights."""
        if self.weights is None:
            raise PreconditionError("Blow-up needs weights; the document has none.")
        blown, mapping = blow_up_pair(self.pair, self.weights.as_integers())
        logger.info(f"Blew up {self.source} into {mapping.total} vertices.")
        return PairLab(blown, source=f"blow-up of {self.source}"), mapping

    def density(self) -> Density:
        """Losing density of ``A`` without its loops."""
        return compute_losing_density(self.pair.a.strip_loops())

    def theorem(self) -> TheoremCertificate:
        return find_witness(self.pair, self.weights)

    def to_document(self) -> PairDocument:
        return PairDocument.from_pair(self.pair, self.weights, self.labels)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_document().to_json() + "\n", encoding="utf-8")
        logger.info(f"Wrote {self.pair} to {path}")

    def __str__(self) -> str:
        return f"<PairLab {self.source} n={self.n} weighted={self.weights is not None}>"
