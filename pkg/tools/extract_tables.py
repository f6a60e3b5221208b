"""Extract the reference Kostka tables from a LaTeX/markdown source into golden files.

Usage: python3 tools/extract_tables.py SOURCE.md src/supermac/data

Every ``table`` environment whose caption names a degree ``(n|m)`` is parsed;
tabulars sharing a caption (tables split into several column blocks) are merged.
Entries are re-rendered with the package's own table writer, so the golden
files and computed tables share one canonical spelling.
"""

import re
import sys
from pathlib import Path

from supermac.combinat import SuperPartition, enumerate_superpartitions
from supermac.kostka import render_table
from supermac.qt import parse_qt

CAPTION = re.compile(r"degree \$\((\d+)\|(\d+)\)\$")


def clean(cell: str) -> str:
    return cell.replace("$", "").replace("\\,", "").replace(" ", "").strip()


def parse_tabular(body: str):
    rows = []
    for line in body.splitlines():
        if "&" not in line:
            continue
        line = line.split("\\\\")[0]
        rows.append([clean(c) for c in line.split("&")])
    header = [SuperPartition.parse(c) for c in rows[0][1:]]
    entries = {}
    for row in rows[1:]:
        r = SuperPartition.parse(row[0])
        for c, cell in zip(header, row[1:]):
            entries[(r, c)] = parse_qt(cell)
    return entries


def main(src, outdir):
    text = Path(src).read_text()
    outdir = Path(outdir)
    for block in re.split(r"\\begin\{table\}", text)[1:]:
        block = block.split("\\end{table}")[0]
        cap = CAPTION.search(block)
        if not cap:
            continue
        n, m = int(cap.group(1)), int(cap.group(2))
        entries = {}
        for tab in re.findall(r"\\begin\{tabular\}\{[^}]*\}(.*?)\\end\{tabular\}", block, re.S):
            entries.update(parse_tabular(tab))
        labels = enumerate_superpartitions(n, m)
        if len(entries) != len(labels) ** 2:
            raise SystemExit(f"degree ({n}|{m}): expected {len(labels) ** 2} entries, found {len(entries)}")
        grid = [[entries[(r, c)] for c in labels] for r in labels]
        path = outdir / f"kostka_{n}_{m}.tex"
        path.write_text(render_table(labels, grid, "latex"))
        print(f"wrote {path}")


if __name__ == "__main__":
    main(*sys.argv[1:3])
