"""Rebuild every shipped .kripke file by expanding its .workflow source."""

from ctlmc.corpus import load_manifest
from ctlmc.kripke import serialize_kripke, size_metrics
from ctlmc.workflow import expand, parse_workflow


def main():
    for e in load_manifest():
        ks = expand(parse_workflow(e.workflow.read_text()))
        e.kripke.write_text(serialize_kripke(ks))
        s, r = size_metrics(ks)
        print(f"{e.label}: states={s} transitions={r} size={s + r} (expected {e.reference_size})")


if __name__ == "__main__":
    main()
