"""Small helpers shared by the experiment scripts."""

import argparse
import csv
from pathlib import Path


def out_dir(description: str) -> Path:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--out-dir", default="results", help="directory for the CSV files")
    path = Path(parser.parse_args().out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(path: Path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([f"{v:.16e}" if isinstance(v, float) else v for v in row])
    print(f"wrote {path}")
