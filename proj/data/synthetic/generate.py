"""Regenerates the synthetic GEC corpus in this directory (seeded, deterministic).

Sentences are built from templates. Test sentences receive at most one
spelling error (a typo in a long content word) and at most one grammar error
(agreement, article or preposition), never on the same token, so a spelling
fixer and a grammar fixer repair disjoint edit sets.

bpe.codes is produced separately with `gecx bpe learn --in train.txt --merges 400`.
"""

import random
from collections import Counter
from pathlib import Path

HERE = Path(__file__).resolve().parent

SUBJECTS = ["he", "she", "my friend", "our neighbour", "the engineer", "his brother"]
VERBS = {
    "visit": "visits", "prefer": "prefers", "remember": "remembers", "describe": "describes",
    "recommend": "recommends", "consider": "considers", "appreciate": "appreciates", "imagine": "imagines",
}
PLACES = ["library", "restaurant", "museum", "hospital", "university", "stadium", "supermarket", "theatre"]
TIMES = ["morning", "weekend", "evening", "afternoon", "holiday"]
ADJECTIVES = ["beautiful", "important", "interesting", "different", "wonderful", "difficult", "necessary",
              "expensive", "comfortable", "dangerous", "beneficial", "excellent"]
TOPICS = ["mathematics", "literature", "chemistry", "philosophy", "architecture", "geography", "economics",
          "psychology", "photography", "astronomy"]
THINGS = ["language", "instrument", "technique", "strategy", "discipline", "profession"]
FRUIT_AN = ["apple", "orange", "apricot", "avocado"]
FRUIT_A = ["banana", "pineapple", "strawberry", "watermelon", "mango"]
NOUNS = ["experience", "environment", "government", "knowledge", "opportunity", "information", "tradition",
         "community", "situation", "generation", "education", "technology"]
PEOPLE = ["children", "students", "customers", "visitors", "employees", "scientists"]

# words that may receive typos: long content words
TYPO_WORDS = set(PLACES + ADJECTIVES + TOPICS + THINGS + NOUNS + PEOPLE + FRUIT_A + ["appreciate", "appreciates",
                 "recommend", "recommends", "remember", "remembers", "consider", "considers"])


def sentence(rng):
    """Returns (tokens, grammar_slots) where each slot is (index, wrong_token)."""
    kind = rng.randrange(6)
    if kind == 0:
        subj = rng.choice(SUBJECTS).split()
        base = rng.choice(list(VERBS))
        toks = subj + [VERBS[base], "the", rng.choice(PLACES), "every", rng.choice(TIMES), "."]
        return toks, [(len(subj), base)]
    if kind == 1:
        fruit_an = rng.random() < 0.5
        fruit = rng.choice(FRUIT_AN if fruit_an else FRUIT_A)
        subj = rng.choice(SUBJECTS).split()
        verb = rng.choice(["eats", "buys", "wants"])
        toks = subj + [verb, "an" if fruit_an else "a", fruit, "in", "the", rng.choice(TIMES), "."]
        return toks, [(len(subj) + 1, "a" if fruit_an else "an")]
    if kind == 2:
        toks = ["she", "is", "interested", "in", rng.choice(TOPICS), "because", "it", "is", rng.choice(ADJECTIVES), "."]
        return toks, [(3, "on")]
    if kind == 3:
        toks = ["the", rng.choice(PEOPLE), "depend", "on", "the", rng.choice(NOUNS), "of", "the", "city", "."]
        return toks, [(3, "of")]
    if kind == 4:
        toks = ["it", "is", rng.choice(ADJECTIVES), "to", "learn", "a", "new", rng.choice(THINGS), "."]
        return toks, []
    toks = ["the", rng.choice(NOUNS), "was", "very", rng.choice(ADJECTIVES), "for", "the", rng.choice(PEOPLE), "."]
    return toks, []


def typo(rng, word, lexicon):
    letters = "abcdefghijklmnopqrstuvwxyz"
    for _ in range(100):
        w = list(word)
        op = rng.randrange(4)
        i = rng.randrange(1, len(w) - 1)
        if op == 0:
            w[i], w[i + 1] = w[i + 1], w[i]
        elif op == 1:
            del w[i]
        elif op == 2:
            w.insert(i, w[i])
        else:
            w[i] = rng.choice(letters)
        cand = "".join(w)
        if cand != word and cand not in lexicon:
            return cand
    raise RuntimeError("no typo for " + word)


def main():
    rng = random.Random(20170101)
    train = [sentence(rng)[0] for _ in range(3000)]
    lexicon = Counter(t for s in train for t in s)

    src_lines, ref_lines, m2_blocks = [], [], []
    for _ in range(300):
        toks, slots = sentence(rng)
        src = list(toks)
        edits = []
        r = rng.random()
        use_grammar = slots and r < 0.6
        use_spell = r > 0.3
        blocked = set()
        if use_grammar:
            idx, wrong = slots[0]
            src[idx] = wrong
            edits.append((idx, "grammar", toks[idx]))
            blocked = {idx - 1, idx, idx + 1}
        if use_spell:
            choices = [i for i, t in enumerate(toks) if t in TYPO_WORDS and i not in blocked]
            if choices:
                i = rng.choice(choices)
                src[i] = typo(rng, toks[i], lexicon)
                edits.append((i, "spelling", toks[i]))
        edits.sort()
        src_lines.append(" ".join(src))
        ref_lines.append(" ".join(toks))
        block = ["S " + " ".join(src)]
        if not edits:
            block.append("A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0")
        for i, label, fix in edits:
            block.append(f"A {i} {i + 1}|||{label}|||{fix}|||REQUIRED|||-NONE-|||0")
        m2_blocks.append("\n".join(block))

    (HERE / "train.txt").write_text("".join(" ".join(s) + "\n" for s in train))
    (HERE / "lexicon.tsv").write_text("".join(f"{w}\t{c}\n" for w, c in sorted(lexicon.items())))
    (HERE / "src.txt").write_text("\n".join(src_lines) + "\n")
    (HERE / "ref.txt").write_text("\n".join(ref_lines) + "\n")
    (HERE / "gold.m2").write_text("\n\n".join(m2_blocks) + "\n")

    rules = ["# agreement"]
    for subj in SUBJECTS:
        last = subj.split()[-1]
        for base, third in VERBS.items():
            rules.append(f"{last} {base} ||| {last} {third}")
    rules.append("# articles")
    for f in FRUIT_AN:
        rules.append(f"a {f} ||| an {f}")
    for f in FRUIT_A:
        rules.append(f"an {f} ||| a {f}")
    rules.append("# prepositions")
    rules.append("interested on ||| interested in")
    rules.append("depend of ||| depend on")
    (HERE / "grammar.rules").write_text("\n".join(rules) + "\n")


if __name__ == "__main__":
    main()
