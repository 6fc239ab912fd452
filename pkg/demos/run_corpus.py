"""Run every CLI command on every corpus file and print the machine reports.

Usage: python3 demos/run_corpus.py [corpus_dir]

Each report is preceded by a header line naming the command and its exit
code, so two runs can be compared byte for byte.
"""
import io
import sys
from contextlib import redirect_stderr
from pathlib import Path

from reedykit import cli

ROOT = Path(__file__).resolve().parent.parent


def commands(path: Path):
    for what in cli.VALIDATE:
        yield ["validate", str(path), what]
    for what in cli.COMPUTE:
        yield ["compute", str(path), what]
    yield ["check-theorems", str(path)]


def run_all(corpus: Path, out) -> int:
    worst = 0
    for path in sorted(corpus.iterdir()):
        for argv in commands(path):
            buf, err = io.StringIO(), io.StringIO()
            with redirect_stderr(err):
                code = cli.run(["--format", "machine", *argv], stdout=buf)
            worst = max(worst, code)
            out.write(f"### {' '.join([argv[0], path.name, *argv[2:]])} -> {code}\n")
            out.write(buf.getvalue() or err.getvalue())
    return worst


if __name__ == "__main__":
    corpus = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "corpus"
    run_all(corpus, sys.stdout)
