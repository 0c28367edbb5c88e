#!/usr/bin/env python3
"""Regenerate the bundled CSV datasets under data/.

Sources are offline package archives so no network access to the UCI
repository is needed:

  keel_ds wheel      (pip download keel-ds)   banana, bupa, iris, wine,
                                              australian, pima, ionosphere,
                                              vehicle
  pydataset sdist    (pip download pydataset) MASS::fgl (UCI glass)

Usage: make_datasets.py KEEL_WHEEL PYDATASET_TARBALL OUT_DIR
"""
import csv
import io
import sys
import tarfile
import zipfile

KEEL = {
    "banana": "banana",
    "liver": "bupa",
    "iris": "iris",
    "wine": "wine",
    "australian": "australian",
    "diabetes": "pima",
    "ionosphere": "ionosphere",
    "vehicle": "vehicle",
}


def write_rows(path, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        for r in rows:
            w.writerow(r)


def main(wheel, tarball, out):
    z = zipfile.ZipFile(wheel)
    for name, keel in KEEL.items():
        text = z.read(f"keel_ds/data/balanced/raw/{keel}.dat").decode()
        rows = []
        for line in text.splitlines():
            if not line.strip() or line.startswith("@"):
                continue
            rows.append([c.strip() for c in line.split(",")])
        write_rows(f"{out}/{name}.csv", rows)
        print(name, len(rows))

    with tarfile.open(tarball) as outer:
        member = next(m for m in outer.getmembers() if m.name.endswith("resources.tar.gz"))
        inner = tarfile.open(fileobj=io.BytesIO(outer.extractfile(member).read()))
        fgl = inner.extractfile("resources/rdata/csv/MASS/fgl.csv").read().decode()
    reader = csv.reader(io.StringIO(fgl))
    next(reader)
    rows = [r[1:] for r in reader]
    write_rows(f"{out}/glass.csv", rows)
    print("glass", len(rows))


if __name__ == "__main__":
    main(*sys.argv[1:4])
