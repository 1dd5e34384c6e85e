"""
Corpus loading: the bundled table of knot and link diagrams.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from alexander import LaurentPolynomial
from config import Config
from diagram import Diagram, is_alternating_diagram, parse_pd
from errors import CorpusError, InvalidInput

log = logging.getLogger(__name__)

CORPUS_HEADER = ["name", "pd", "alternating", "fibered", "alexander"]
_BOOLEANS = {"true": True, "false": False}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd: str
    alternating_diagram: bool
    fibered: bool | None
    alexander: LaurentPolynomial | None
    diagram: Diagram = field(compare=False, repr=False)

    @property
    def is_knot(self):
        """One component."""
        return len(self.diagram.components) == 1

    @property
    def crossings(self):
        """Crossing count of the diagram."""
        return self.diagram.crossing_count


class CorpusLoader:
    """Reads and validates corpus CSV files."""

    def __init__(self, config):
        self.config = config
        self.data_dir = config.DATA_DIR

    def load(self, path=None):
        """Load every row, or fail on the first bad one."""
        filepath = Path(path) if path is not None else self.config.CORPUS_FILE
        df = self._read(filepath)
        entries = []
        seen = {}
        for index, row in df.iterrows():
            line = index + 2
            entry = self._parse_row(row, line)
            if entry.name in seen:
                raise CorpusError(
                    f"duplicate name {entry.name!r} (first on line {seen[entry.name]})", line
                )
            seen[entry.name] = line
            entries.append(entry)
        log.info("loaded %d corpus entries from %s", len(entries), filepath)
        return entries

    def to_frame(self, entries):
        """One row per entry with the diagram's basic counts."""
        return pd.DataFrame(
            [
                {
                    "name": e.name,
                    "crossings": e.crossings,
                    "components": len(e.diagram.components),
                    "alternating": e.alternating_diagram,
                    "fibered": e.fibered,
                    "alexander": e.alexander.serialize() if e.alexander else "",
                }
                for e in entries
            ]
        )

    def _read(self, filepath):
        """DataFrame of strings with the expected header."""
        if not filepath.exists():
            raise CorpusError(f"corpus file {filepath} not found")
        try:
            df = pd.read_csv(filepath, dtype=str, keep_default_na=False, skipinitialspace=True)
        except pd.errors.EmptyDataError:
            raise CorpusError(f"{filepath} is empty; expected header {','.join(CORPUS_HEADER)}", 1)
        except pd.errors.ParserError as e:
            raise CorpusError(f"{filepath}: {e}") from None
        if [c.strip() for c in df.columns] != CORPUS_HEADER:
            raise CorpusError(
                f"header {','.join(df.columns)} does not match {','.join(CORPUS_HEADER)}", 1
            )
        df.columns = CORPUS_HEADER
        return df

    def _parse_row(self, row, line):
        """Validated entry for one CSV row."""
        name = row["name"].strip()
        if not name:
            raise CorpusError("empty name", line)
        try:
            diagram = parse_pd(row["pd"])
        except InvalidInput as e:
            raise CorpusError(f"{name}: {e}", line) from None

        alternating = self._boolean(row["alternating"], "alternating", name, line)
        if alternating is None:
            raise CorpusError(f"{name}: alternating flag is required", line)
        if is_alternating_diagram(diagram) != alternating:
            raise CorpusError(f"{name}: alternating flag {alternating} disagrees with the diagram", line)

        is_knot = len(diagram.components) == 1
        fibered = self._boolean(row["fibered"], "fibered", name, line)
        alexander = None
        if row["alexander"].strip():
            try:
                alexander = LaurentPolynomial.parse(row["alexander"])
            except InvalidInput as e:
                raise CorpusError(f"{name}: {e}", line) from None
            if alexander != alexander.normalize():
                raise CorpusError(
                    f"{name}: polynomial {alexander.serialize()} is not normalized", line
                )
        if is_knot and (fibered is None or alexander is None):
            raise CorpusError(f"{name}: knots need both fibered and alexander values", line)

        return CorpusEntry(name, row["pd"].strip(), alternating, fibered, alexander, diagram)

    @staticmethod
    def _boolean(value, column, name, line):
        """true, false or empty (None)."""
        value = value.strip().lower()
        if not value:
            return None
        if value not in _BOOLEANS:
            raise CorpusError(f"{name}: {column} must be true or false, got {value!r}", line)
        return _BOOLEANS[value]


def load_corpus(path=None, config=Config):
    """Entries of the corpus at ``path``, the bundled one by default."""
    return CorpusLoader(config).load(path)
