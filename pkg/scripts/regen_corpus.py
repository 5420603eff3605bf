"""Rebuild the bundled regression corpus (fixtures + expected reports).

Run after an intentional change of report format; review the diff.
"""

import json
import sys
from pathlib import Path

from qmatkit.cli import canonical, corpus_dir, parse_args, run

FIXTURES = {
    "braid-flip": "check-braiding --input flip",
    "braid-involutive": "check-braiding --input involutive_gl2",
    "braid-hecke": "check-braiding --input hecke_gl2",
    "classify-involutive": "classify --input involutive_gl2",
    "classify-hecke": "classify --input hecke_gl2",
    "compat-inv-rtt": "check-compat --R involutive_gl2 --F rtt",
    "compat-hecke-rtt": "check-compat --R hecke_gl2 --F rtt",
    "compat-inv-re": "check-compat --R involutive_gl2 --F re",
    "compat-hecke-re": "check-compat --R hecke_gl2 --F re",
    "compat-hecke-inv": "check-compat --R hecke_gl2 --F involutive_gl2",
    "compat-inv-hecke": "check-compat --R involutive_gl2 --F hecke_gl2",
    "skew-hecke": "skew-inverse --input hecke_gl2",
    "baxter-rational": "baxterize-check --input involutive_gl2",
    "baxter-trig": "baxterize-check --input hecke_gl2",
    "baxter-screen": "baxterize-check --input hecke_gl2 --q-mode numeric:7/5 --screen-only",
    "towers-hecke": "symmetrizers --input hecke_gl2",
    "even-involutive": "detect-even --input involutive_gl2",
    "even-hecke": "detect-even --input hecke_gl2",
    "present-rtt-hecke": "present --R hecke_gl2 --F rtt",
    "present-re-hecke": "present --R hecke_gl2 --F re",
    "present-re-involutive": "present --R involutive_gl2 --F re",
    "present-hqa-hecke": "present --R hecke_gl2 --F rtt --system HQA",
    "reduce-rtt-ok": "reduce --R hecke_gl2 --F rtt --expr a*b-q*b*a",
    "reduce-rtt-fail": "reduce --R hecke_gl2 --F rtt --expr a*b-b*a",
    "central-rtt-hecke": "central --R hecke_gl2 --F rtt --expr a*d-q*b*c",
    "central-rtt-inv": "central --R involutive_gl2 --F rtt --expr a*d-q^-1*b*c",
    "qdet-rtt-inv": "qdet --R involutive_gl2 --F rtt --form a*d-q^-1*b*c --form d*a-q*c*b",
    "qdet-rtt-hecke": "qdet --R hecke_gl2 --F rtt --form a*d-q*b*c",
    "qdet-re-hecke": "qdet --R hecke_gl2 --F re --form a*d-q^2*c*b --form q^2*(a*d-b*c)-q*(q-q^-1)*a*a",
    "qdet-re-inv": "qdet --R involutive_gl2 --F re --form a*d-b*c",
    "qdet-hqa-rtt-inv": "qdet --R involutive_gl2 --F rtt --system HQA --form a*d-q^-1*b*c --form d*a-q*c*b",
    "qdet-hqa-rtt-hecke": "qdet --R hecke_gl2 --F rtt --system HQA --form a*d-q*b*c --form d*a-q^-1*c*b",
    "qdet-hqa-re-inv": "qdet --R involutive_gl2 --F re --system HQA2 --form a*d-c*b --form d*a-b*c",
    "qdet-hqa-re-hecke": "qdet --R hecke_gl2 --F re --system HQA2 --form a*d-q^2*c*b "
                         "--form q^2*(a*d-b*c)-q*(q-q^-1)*a*a",
    "ch-re-hecke": "cayley-hamilton --R hecke_gl2 --F re",
    "ch-rtt-hecke": "cayley-hamilton --R hecke_gl2 --F rtt",
    "yangian-rational": "yangian --R flip --F re --truncation 2",
    "yangian-trig": "yangian --R hecke_gl2 --F re --truncation 1",
}


def main(target=None):
    d = Path(target) if target else corpus_dir()
    (d / "fixtures").mkdir(parents=True, exist_ok=True)
    (d / "expected").mkdir(parents=True, exist_ok=True)
    for fid, cmd in FIXTURES.items():
        fx = {"id": fid, "argv": cmd.split()}
        (d / "fixtures" / f"{fid}.json").write_text(json.dumps(fx, indent=1) + "\n")
        code, rep = run(parse_args(fx["argv"]))
        (d / "expected" / f"{fid}.json").write_text(canonical(rep))
        print(f"{fid:24s} exit={code} verdict={rep.get('verdict')}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
