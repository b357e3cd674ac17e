"""Generate a synthetic curriculum catalog CSV for trying out the CLI.

The corpus plants topic templates across subjects and grades, so the
pipeline has real structure to recover. Optionally writes a matching
expert-label CSV for the validate stage.

Usage:
    python3 scripts/make_demo_catalog.py --out demo/catalog.csv \
        --labels-out demo/labels.csv --target-los 500
"""

import argparse
from pathlib import Path

from curralign.catalog import catalog_stats, catalog_to_csv
from curralign.synthetic import labeled_pairs_csv, planted_corpus


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", required=True, help="catalog CSV destination")
    ap.add_argument("--labels-out", default=None, help="expert label CSV destination")
    ap.add_argument("--templates", type=int, default=30, help="planted topic templates")
    ap.add_argument("--cross", type=int, default=6, help="templates spanning >= 4 subjects")
    ap.add_argument("--subjects", type=int, default=12)
    ap.add_argument("--target-los", type=int, default=None,
                    help="stop once the catalog reaches this many LOs")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=60, help="labeled pairs to draw")
    ap.add_argument("--noise", type=float, default=0.1,
                    help="fraction of expert labels flipped")
    args = ap.parse_args(argv)

    corpus = planted_corpus(n_templates=args.templates, n_cross=args.cross,
                            n_subjects=args.subjects, seed=args.seed,
                            target_los=args.target_los)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(catalog_to_csv(corpus.catalog), "utf-8")

    stats = catalog_stats(corpus.catalog)
    print(f"wrote {out}: {stats.n_los} LOs, {stats.n_subjects} subjects, "
          f"{stats.n_standards} standards, {stats.ordered_pair_count:,} ordered pairs")
    print(f"planted cross-subject templates: {list(corpus.cross_template_ids)}")

    if args.labels_out:
        labels = Path(args.labels_out)
        labels.parent.mkdir(parents=True, exist_ok=True)
        labels.write_text(labeled_pairs_csv(corpus, n_pairs=args.pairs,
                                            seed=args.seed + 1, noise=args.noise),
                          "utf-8")
        print(f"wrote {labels}: {args.pairs} labeled pairs, noise {args.noise:.0%}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
