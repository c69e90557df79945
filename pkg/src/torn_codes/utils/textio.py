"""
Text formats for codewords and received segments

A codeword file starts with one ``#`` header line holding a JSON envelope and
then lists one strand per line. A segments file is one segment per line and
carries nothing else.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple, Union

from ..core.exceptions import ParameterError
from ..core.sequences import QString

logger = logging.getLogger(__name__)

HEADER_PREFIX = "# torn-codes "


def write_codeword(
    path: Union[str, Path], strands: Iterable[QString], header: Dict[str, Any], acgt: bool = False
) -> None:
    lines = [HEADER_PREFIX + json.dumps(header, sort_keys=True)]
    lines.extend(strand.to_text(acgt) for strand in strands)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug(f"Wrote codeword to {path}")


def read_codeword(path: Union[str, Path], q: int = 2) -> Tuple[Dict[str, Any], List[QString]]:
    header: Dict[str, Any] = {}
    strands = []
    for number, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
        if line.startswith(HEADER_PREFIX):
            try:
                header = json.loads(line[len(HEADER_PREFIX) :])
            except json.JSONDecodeError as exc:
                raise ParameterError(f"Malformed header on line {number + 1}: {exc}") from exc
            q = int(header.get("params", {}).get("q", q))
        elif line.strip() and not line.startswith("#"):
            strands.append(QString.from_text(line, q))
    return header, strands


def write_segments(path: Union[str, Path], segments: Iterable[QString], acgt: bool = False) -> int:
    lines = [segment.to_text(acgt) for segment in segments]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    logger.debug(f"Wrote {len(lines)} segments to {path}")
    return len(lines)


def read_segments(path: Union[str, Path], q: int = 2) -> List[QString]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [QString.from_text(line, q) for line in lines if line.strip()]
