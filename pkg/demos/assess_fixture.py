"""Walk the bundled fixture corpus and explain every detection.

Run:  python3 demos/assess_fixture.py
"""

from importlib.resources import files

from solosent.conllu import parse_conllu
from solosent.detectors import detect_all
from solosent.lexicons import load_lexicon_set
from solosent.profiles import apply_profile, load_profile

corpus = (
    files("solosent.data.fixtures") / "sv_examples.conllu"
).read_text(encoding="utf-8")
profile = load_profile("suc-mamba")
lexicons = load_lexicon_set()

for sentence in parse_conllu(corpus):
    annotated = apply_profile(sentence, profile)
    assessment = detect_all(annotated, lexicons)
    verdict = "stands alone" if assessment.context_independent else "needs context"
    print(f"{sentence.id}  {sentence.text}")
    print(f"    score {assessment.score}  ->  {verdict}")
    for detection in assessment.detections:
        where = ",".join(str(i) for i in detection.token_indices) or "whole sentence"
        print(
            f"    [{detection.theme.value}] weight {detection.weight} "
            f"at {where}: {detection.rationale}"
        )
    print()
