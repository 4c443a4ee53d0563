"""Run every certificate over the built-in corpus and write the JSON report.

    python3 scripts/run_corpus.py --out corpus_report.json
"""

import argparse
import json
import time
from dataclasses import dataclass

from hopflat.cli import main


@dataclass(frozen=True)
class CorpusRun:
    out: str = "corpus_report.json"
    strict_saturation: bool = False


def run(cfg: CorpusRun) -> int:
    argv = ["all", "--out", cfg.out]
    if cfg.strict_saturation:
        argv.append("--strict-saturation")
    start = time.perf_counter()
    code = main(argv)
    elapsed = time.perf_counter() - start
    with open(cfg.out, encoding="utf-8") as fh:
        summary = json.load(fh)["summary"]
    print(f"exit {code}: {summary['total']} certificates, "
          f"{len(summary['failed'])} failed, {elapsed:.1f}s -> {cfg.out}")
    return code


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=CorpusRun.out)
    ap.add_argument("--strict-saturation", action="store_true")
    args = ap.parse_args()
    raise SystemExit(run(CorpusRun(args.out, args.strict_saturation)))
