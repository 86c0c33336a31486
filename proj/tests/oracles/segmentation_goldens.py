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
"""Writes the segmentation golden fixtures.

Each policy is a list of (tag, html, text) blocks. The HTML goes into the
fixture page; the expected segments are computed from the plain text of the
blocks, without looking at the HTML.
"""

import html
import json
import pathlib
import re

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "segmentation"

PREFIX = ('<div id="wm-ipp"><span>success</span> <span>fail</span>'
          '<p>About this capture</p><p>COLLECTED BY Organization: Internet Archive</p>'
          '<p>TIMESTAMPS</p></div>')

CONTRACTIONS = {
    "don't": "do not", "doesn't": "does not", "didn't": "did not",
    "haven't": "have not", "hasn't": "has not", "hadn't": "had not",
    "won't": "will not", "can't": "can not", "isn't": "is not",
    "aren't": "are not", "wasn't": "was not", "weren't": "were not",
    "shouldn't": "should not", "wouldn't": "would not", "couldn't": "could not",
}


def normalize(s):
    s = s.replace("’", "'").replace("‘", "'")
    s = " ".join(s.lower().split())
    s = re.sub(r"(?<![a-z])(%s)(?![a-z])" % "|".join(re.escape(k) for k in CONTRACTIONS),
               lambda m: CONTRACTIONS[m.group(1)], s)
    s = "".join(c for c in s if "a" <= c <= "z" or c == " ")
    return " ".join(t for t in s.split() if len(t) >= 2)


def segment(paragraphs):
    # Rule (a): a short non-final paragraph is glued to the next one.
    units = []
    i = 0
    while i < len(paragraphs):
        cur = paragraphs[i]
        i += 1
        while len(cur) < 50 and i < len(paragraphs):
            cur = cur + " " + paragraphs[i]
            i += 1
        units.append(cur)
    # Rule (b): adjacent pairs whose lengths sum below 250 merge once.
    segs = []
    i = 0
    while i < len(units):
        if i + 1 < len(units) and len(units[i]) + len(units[i + 1]) < 250:
            segs.append(units[i] + " " + units[i + 1])
            i += 2
        else:
            segs.append(units[i])
            i += 1
    return segs


def filler(seed, n):
    words = ("we collect store share your device identifier location data with "
             "partners advertising analytics services account information to "
             "provide improve personalize the app").split()
    out, k = [], seed
    while len(" ".join(out)) < n:
        k = (k * 1103515245 + 12345) % (1 << 31)
        out.append(words[k % len(words)])
    s = " ".join(out)[:n].rstrip()
    while len(s) < n:
        s += "s"
    return s[0].upper() + s[1:-1] + "."


def p(text, tag="p"):
    return (tag, "<%s>%s</%s>" % (tag, html.escape(text, quote=False), tag), text)


POLICIES = [
    # Heading example from the segmentation rules.
    ("heading_pair", False, [
        p("Data We Collect", "h2"),
        p("We store your email address and phone number for account purposes."),
    ]),
    # Two long paragraphs, neither rule applies.
    ("two_long", False, [p(filler(1, 300)), p(filler(2, 300))]),
    # 120 + 100 merge into 221 characters.
    ("pair_merge", False, [p(filler(3, 120)), p(filler(4, 100))]),
    # Archive banner ahead of the policy.
    ("archive_prefix", True, [
        p("Privacy Policy", "h1"),
        p(filler(5, 180)),
        p("Information Sharing", "h2"),
        p(filler(6, 140)),
        p(filler(7, 260)),
    ]),
    # Consecutive headings cascade into the paragraph after them.
    ("stacked_headings", False, [
        p("Section 1", "h2"),
        p("Overview", "h3"),
        p("What this covers", "h4"),
        p(filler(8, 90)),
        p(filler(9, 400)),
    ]),
    # Short final paragraph stays on its own.
    ("short_tail", False, [
        p(filler(10, 260)),
        p(filler(11, 270)),
        p("Contact us anytime.", "p"),
    ]),
    # List items are blocks; merges happen pairwise without cascading.
    ("list_items", True, [
        p("We may collect the following:", "p"),
        p(filler(12, 60), "li"),
        p(filler(13, 70), "li"),
        p(filler(14, 80), "li"),
        p(filler(15, 90), "li"),
        p(filler(16, 100), "li"),
    ]),
    # Boundary lengths: 49 glues, 50 does not; 249 merges, 250 does not.
    ("boundaries", False, [
        p(filler(17, 49)),
        p(filler(18, 150)),
        p(filler(19, 50)),
        p(filler(20, 199)),
        p(filler(21, 125)),
        p(filler(22, 125)),
    ]),
    # Entities and a line break inside one paragraph.
    ("entities", False, [
        ("h2", "<h2>Cookies &amp; Tracking</h2>", "Cookies & Tracking"),
        ("p", "<p>We don't sell data.<br>Partners can't see your IMEI &lt;hashed&gt; "
              "identifiers, and we won't share them.</p>",
         "We don't sell data. Partners can't see your IMEI <hashed> identifiers, "
         "and we won't share them."),
        p(filler(23, 210)),
    ]),
    # Heading as the final block stays alone.
    ("trailing_heading", True, [
        p(filler(24, 300)),
        p(filler(25, 110)),
        p(filler(26, 120)),
        p("Last updated", "h3"),
    ]),
]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    goldens = []
    for name, prefixed, blocks in POLICIES:
        body = (PREFIX if prefixed else "") + "\n".join(b[1] for b in blocks)
        page = ("<!DOCTYPE html><html><head><title>%s</title>"
                "<style>p{margin:0}</style><script>var t = 1;</script></head>"
                "<body>\n%s\n</body></html>\n") % (name, body)
        (OUT / (name + ".html")).write_text(page)
        segs = segment([b[2] for b in blocks])
        goldens.append({
            "policy": name,
            "segments": [{"raw_text": s, "char_len": len(s), "text": normalize(s)}
                         for s in segs],
        })
    (OUT / "goldens.json").write_text(json.dumps(goldens, indent=1) + "\n")


if __name__ == "__main__":
    main()
