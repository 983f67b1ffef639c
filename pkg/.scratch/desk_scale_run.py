import json, time
import numpy as np
from molforge.model import ModelConfig
from molforge.store import load_pretrain, Checkpoint, save_checkpoint
from molforge.tokenizer import build_vocab
from molforge.train import TrainConfig, pretrain
from molforge.sample import generate
from molforge import metrics

t0 = time.perf_counter()
train_corpus = load_pretrain("data/pretrain_10k.csv", split="train")
test_corpus = load_pretrain("data/pretrain_10k.csv", split="test")
vocab = build_vocab(train_corpus.smiles() + test_corpus.smiles())
cfg = ModelConfig(vocab_size=len(vocab), n_conditions=4, max_len=64)
tc = TrainConfig(epochs=30, batch_size=64, lr=3e-4, warmup_steps=200, seed=11,
                 eval_every=200, max_seconds=1500)
params, adam, recs = pretrain(train_corpus, vocab, cfg, tc,
                              eval_corpus=test_corpus, log_path=".scratch/desk.jsonl")
train_s = time.perf_counter() - t0
ckpt = Checkpoint(params=params, config=cfg, vocab=vocab, condition_names={}, seed=11)
save_checkpoint(ckpt, ".scratch/desk.ckpt")
print("trained %.0fs" % train_s, flush=True)

t1 = time.perf_counter()
samples = generate(ckpt, 0, 1000, temperature=1.0, seed=3, max_len=64, batch_size=250)
print("sampled %.0fs" % (time.perf_counter() - t1), flush=True)
frac, valid = metrics.validity([s.text for s in samples])
uniq = metrics.unique_at(valid, 1000)
print(json.dumps({"validity": frac, "unique@1k": uniq,
                  "total_s": time.perf_counter() - t0}))
