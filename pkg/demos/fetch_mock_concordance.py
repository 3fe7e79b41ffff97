"""Pull sentences from a (mock) concordance service and assess them.

The fetch pipeline normally talks to a Korp-style endpoint over HTTP.
Everything after the socket is transport-agnostic, so this demo plugs in
a canned transport answering like the real service and runs the full
path: build request, fetch page, normalize hits, assess.

Run:  python3 demos/fetch_mock_concordance.py
"""

import json

from solosent.concordance import (
    ConcordanceQuery,
    TransportReply,
    build_request,
    fetch_page,
    to_sentences,
)
from solosent.detectors import detect_all
from solosent.lexicons import load_lexicon_set
from solosent.profiles import load_profile


def token(word, lemma, pos, msd, dephead, deprel):
    return {
        "word": word, "lemma": lemma, "pos": pos, "msd": msd,
        "ref": "0", "dephead": dephead, "deprel": deprel,
    }


CANNED_PAGE = {
    "hits": 2,
    "kwic": [
        {
            "corpus": "SUC3",
            "match": {"position": "1041"},
            "tokens": [
                token("Det", "det", "PN", "NEU|SIN|DEF", "2", "SS"),
                token("regnar", "regna", "VB", "PRS|AKT", "0", "ROOT"),
                token(".", ".", "MAD", "", "2", "IP"),
            ],
        },
        {
            "corpus": "SUC3",
            "match": {"position": "2197"},
            "tokens": [
                token("Men", "men", "KN", "", "3", "++"),
                token("hon", "hon", "PN", "UTR|SIN|DEF", "3", "SS"),
                token("skrattade", "skratta", "VB", "PRT|AKT", "0", "ROOT"),
                token(".", ".", "MAD", "", "3", "IP"),
            ],
        },
    ],
}


class CannedTransport:
    """Answers every GET with the page above, like a one-page corpus."""

    def get(self, url):
        print(f"GET {url}")
        return TransportReply(
            status=200, body=json.dumps(CANNED_PAGE).encode("utf-8")
        )


query = ConcordanceQuery(
    query_expression='[pos="VB"]', corpora=("SUC3",), page_size=25
)
request = build_request(query, "https://korp.example.invalid/api")
result = fetch_page(request, CannedTransport())
print(f"fetched {len(result.hits)} hit(s), {result.skipped} skipped")

profile = load_profile("suc-mamba")
lexicons = load_lexicon_set()
sentences, issues = to_sentences(result.hits, profile)
for issue in issues:
    print(f"    dropped {issue.sentence_id}: {issue.message}")

print()
for sentence in sentences:
    assessment = detect_all(sentence, lexicons)
    verdict = "stands alone" if assessment.context_independent else "needs context"
    text = " ".join(t.form for t in sentence.tokens)
    print(f"{sentence.id}  {text}")
    print(f"    {verdict} (score {assessment.score})")
    for detection in assessment.detections:
        print(f"    [{detection.theme.value}] {detection.rationale}")
