"""Regenerate src/mnpterm/data/patterns.txt.

The default grammar: two-word modifier+head pairs, "X of Y" phrases and
the usual three-content-word compounds. Ambiguous tag sequences list the
preferred bracketing first, since deterministic runs keep the first match.
"""

from pathlib import Path

NOUNS = ["NN", "NNS", "NNP", "NNPS"]
MODIFIERS = ["JJ", "JJR", "JJS", "NN", "NNS", "NNP", "NNPS", "FW"]


def patterns():
    out = []
    for m in MODIFIERS:
        for h in NOUNS:
            out.append(f"({m} {h}<h>)")
    out.append("(FW<h> FW)")
    for h in ["NN", "NNS", "NNP"]:
        for o in ["NN", "NNS", "NNP", "NNPS"]:
            out.append(f"({h}<h> (IN=of {o}<h>))")
    for a in ["NN", "NNP", "NNS"]:
        for b in ["NN", "NNP"]:
            for c in ["NN", "NNS"]:
                out.append(f"(({a} {b}<h>) {c}<h>)")
    for b in ["NN", "NNP"]:
        for c in ["NN", "NNS"]:
            out.append(f"(JJ ({b} {c}<h>)<h>)")
    for c in ["NN", "NNS"]:
        out.append(f"(JJ (JJ {c}<h>)<h>)")
        out.append(f"((JJ NN<h>) {c}<h>)")
    for h in ["NN", "NNS"]:
        for o in ["NN", "NNS"]:
            out.append(f"((JJ {h}<h>)<h> (IN=of {o}<h>))")
            out.append(f"({h}<h> (IN=of (JJ {o}<h>)<h>))")
            out.append(f"({h}<h> (IN=of (NN {o}<h>)<h>))")
    for h, o in [("NN", "NN"), ("NN", "NNP"), ("NNS", "NN")]:
        out.append(f"((NN {h}<h>)<h> (IN=of {o}<h>))")
    return out


if __name__ == "__main__":
    pats = patterns()
    assert len(pats) == len(set(pats)), "duplicate pattern"
    header = (
        "# Default parsing patterns: binary trees over POS tags, <h> marks the head child,\n"
        "# TAG=lemma anchors a leaf to one word. At most three content words each.\n"
    )
    target = Path(__file__).resolve().parents[1] / "src" / "mnpterm" / "data" / "patterns.txt"
    target.write_text(header + "\n".join(pats) + "\n", encoding="utf-8")
    print(f"{len(pats)} patterns -> {target}")
