#!/usr/bin/env python3
# Copyright 2026 The complyscope Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference tf-idf vectors from scikit-learn's smoothed, L2-normalized
vectorizer, frozen into tests/fixtures/tfidf_frozen.json."""

import json
import pathlib

from sklearn.feature_extraction.text import TfidfVectorizer

ROOT = pathlib.Path(__file__).resolve().parent.parent
STOPWORDS = [w.strip() for w in
             (ROOT.parent / "data" / "stopwords_en.txt").read_text().splitlines()
             if w.strip() and not w.startswith("#")]

CASES = [
    {
        "fit": ["collect email", "share location", "collect location"],
        "query": ["collect collect email", "location", "unknown words only",
                  "email email email share"],
    },
    {
        "fit": ["we collect your device identifier and ip address",
                "third party advertising partners may receive your advertising id",
                "we do not collect your precise location",
                "cookies and web beacons are used by analytics providers",
                "your email address is shared with our payment processor"],
        "query": ["we collect your advertising id and email address",
                  "analytics providers use cookies cookies cookies",
                  "precise location is never collected"],
    },
]


def main():
    out = []
    for case in CASES:
        vec = TfidfVectorizer(stop_words=STOPWORDS, token_pattern=r"(?u)\b\w\w+\b",
                              smooth_idf=True, sublinear_tf=False, norm="l2",
                              lowercase=False)
        vec.fit(case["fit"])
        vocab = vec.get_feature_names_out()
        rows = vec.transform(case["query"])
        queries = []
        for i, q in enumerate(case["query"]):
            row = rows.getrow(i)
            queries.append({
                "text": q,
                "vector": {vocab[j]: float(v) for j, v in zip(row.indices, row.data)},
            })
        out.append({
            "fit": case["fit"],
            "idf": {t: float(v) for t, v in zip(vocab, vec.idf_)},
            "queries": queries,
        })
    path = ROOT / "fixtures" / "tfidf_frozen.json"
    path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
