"""Which construction (orbit theory, direct product, Delta-product) produces each SCT of Z_n."""
import argparse
from dataclasses import dataclass

from sct.characters import character_table
from sct.groups import make_cyclic
from sct.lattice import check_cyclic_classification, enumerate_scts


@dataclass
class ReportConfig:
    max_n: int = 12
    verbose: bool = False


def main(cfg: ReportConfig) -> int:
    failed = 0
    for n in range(1, cfg.max_n + 1):
        rep = check_cyclic_classification(enumerate_scts(character_table(make_cyclic(n))))
        failed += not rep.ok
        print(f"Z_{n}: {'ok' if rep.ok else 'UNMATCHED'} {len(rep.theories)} theories {rep.form_counts()}")
        if cfg.verbose:
            for i, S in enumerate(rep.theories):
                forms = rep.matches.get(i, [])
                print(f"    {S.compact():40s} {forms[0] if forms else '-'}"
                      + (f" (+{len(forms) - 1} more)" if len(forms) > 1 else ""))
    return 1 if failed else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("-v", "--verbose", action="store_true")
    a = p.parse_args()
    raise SystemExit(main(ReportConfig(a.max_n, a.verbose)))
