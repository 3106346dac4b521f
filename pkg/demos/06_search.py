"""A resumable sweep over a small box, written as JSONL."""

# %%
import json
import os
import tempfile

from quadrank.construct import ANY
from quadrank.search import SearchBox, run_search

box = SearchBox((1, 5), (1, 5), (1, 5), (2, 3, 4, 5))
tmp = tempfile.mkdtemp()
out, ck = os.path.join(tmp, "box.jsonl"), os.path.join(tmp, "ck.json")

# %% Stop after 200 points, then resume from the checkpoint
run_search(box, ANY, out, checkpoint_path=ck, stop=200)
summary = run_search(box, ANY, out, checkpoint_path=ck, resume=True)
print(json.dumps(summary.as_dict(), indent=1))

# %% Compare with an uninterrupted run
ref = os.path.join(tmp, "ref.jsonl")
run_search(box, ANY, ref, jobs=2)
with open(out, "rb") as f1, open(ref, "rb") as f2:
    print("byte-identical:", f1.read() == f2.read())

# %%
with open(out) as fh:
    for line in fh:
        rec = json.loads(line)
        if rec["status"] == "verified" and rec["verdict"]["code"] == "RANK2_CONFIRMED":
            print(rec["a"], rec["b"], rec["c"], rec["n"], rec["disc"], rec["verdict"]["span"])
