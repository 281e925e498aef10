"""On-disk formats for codes, permutations, stabilizers, matrices and words.

Code file:            line 1 "n k", then k lines of n characters from {0,1};
                      lines starting with '#' are comments.
Permutation file:     a single line of n whitespace-separated 1-based images.
Stabilizer file:      rows of n characters from {0,1,w,W} (w = omega,
                      W = omega^2); the stabilizer, logical-X and logical-Z
                      sections are separated by lines "---".
Matrix file:          square 01 rows, '#' comments.
Instruction word:     JSON document with the ordered instruction list
                      (1-based permutation images where applicable), the
                      target matrix and both cost metrics.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .codes import CssCode, LinearCode
from .gf2 import BitMatrix
from .gf4stab import StabilizerCode, load_stabilizer
from .logical import LogicalMatrix
from .perms import Permutation
from .synth import Instruction, InstructionWord


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            out.append(stripped)
    return out


def parse_code(text: str) -> LinearCode:
    lines = _content_lines(text)
    if not lines:
        raise ValueError("empty code file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"expected 'n k' header, got {lines[0]!r}")
    try:
        n, k = int(header[0]), int(header[1])
    except ValueError:
        raise ValueError(f"non-integer header {lines[0]!r}") from None
    rows = lines[1:]
    if len(rows) != k:
        raise ValueError(f"expected {k} generator rows, found {len(rows)}")
    for r in rows:
        if len(r) != n or not set(r) <= {"0", "1"}:
            raise ValueError(f"bad generator row {r!r}")
    return LinearCode(BitMatrix.from_strings(rows))


def serialize_code(C: LinearCode) -> str:
    lines = [f"{C.n} {C.k}"]
    lines.extend(C.generator.to_strings())
    return "\n".join(lines) + "\n"


def load_code(path: str | Path) -> LinearCode:
    return parse_code(Path(path).read_text())


def save_code(C: LinearCode, path: str | Path):
    Path(path).write_text(serialize_code(C))


def parse_perm(text: str) -> Permutation:
    fields = text.split()
    if not fields:
        raise ValueError("empty permutation file")
    try:
        images = [int(f) - 1 for f in fields]
    except ValueError:
        raise ValueError("permutation file must contain integers") from None
    return Permutation(tuple(images))


def serialize_perm(p: Permutation) -> str:
    return " ".join(str(i + 1) for i in p.images) + "\n"


def load_perm(path: str | Path) -> Permutation:
    return parse_perm(Path(path).read_text())


def parse_stabilizer(text: str) -> StabilizerCode:
    sections: list[list[str]] = [[]]
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if set(stripped) == {"-"}:
            sections.append([])
        else:
            sections[-1].append(stripped)
    if len(sections) != 3:
        raise ValueError(
            f"expected 3 sections separated by '---', found {len(sections)}"
        )
    rows = [r for sec in sections for r in sec]
    return load_stabilizer(rows, tuple(len(s) for s in sections))


def serialize_stabilizer(S: StabilizerCode) -> str:
    lines = [v.to_string() for v in S.stabilizer_gens]
    lines.append("---")
    lines.extend(v.to_string() for v in S.logical_x)
    lines.append("---")
    lines.extend(v.to_string() for v in S.logical_z)
    return "\n".join(lines) + "\n"


def load_stabilizer_file(path: str | Path) -> StabilizerCode:
    return parse_stabilizer(Path(path).read_text())


def parse_matrix(text: str) -> BitMatrix:
    lines = _content_lines(text)
    if not lines:
        raise ValueError("empty matrix file")
    for r in lines:
        if not set(r) <= {"0", "1"}:
            raise ValueError(f"bad matrix row {r!r}")
    return BitMatrix.from_strings(lines)


def serialize_matrix(M: BitMatrix) -> str:
    return "\n".join(M.to_strings()) + "\n"


def load_matrix(path: str | Path) -> BitMatrix:
    return parse_matrix(Path(path).read_text())


def word_to_document(word: InstructionWord, n: int) -> dict:
    return {
        "instructions": [
            {
                "kind": ins.kind,
                "perm": None
                if ins.perm is None
                else [i + 1 for i in ins.perm.images],
            }
            for ins in word.instructions
        ],
        "target": word.logical_effect.m.to_strings(),
        "cost": word.cost(n),
    }


def serialize_word(word: InstructionWord, n: int) -> str:
    return json.dumps(word_to_document(word, n), indent=1) + "\n"


def parse_word(text: str, css: CssCode) -> InstructionWord:
    doc = json.loads(text)
    instructions = []
    for entry in doc["instructions"]:
        perm = entry.get("perm")
        instructions.append(
            Instruction(
                entry["kind"],
                None if perm is None else Permutation(tuple(i - 1 for i in perm)),
            )
        )
    target = BitMatrix.from_strings(doc["target"])
    return InstructionWord(instructions, LogicalMatrix(2 * css.k, target))


def load_word(path: str | Path, css: CssCode) -> InstructionWord:
    return parse_word(Path(path).read_text(), css)


def data_path(name: str) -> Path:
    """Path of a bundled fixture data file."""
    return Path(__file__).parent / "data" / name


def list_fixture_files() -> list[str]:
    return sorted(p.name for p in (Path(__file__).parent / "data").iterdir())
