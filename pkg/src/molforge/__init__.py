"""molforge: a conditional SMILES language model with its own chemistry stack.

Subpackages and modules:
  chem       SMILES parsing, validation, canonicalization, fingerprints
  tokenizer  SMILES <-> token ids
  tensor     reverse-mode autodiff arrays and Adam
  kernels    numba/numpy hot-kernel backends (MOLFORGE_KERNELS env switch)
  model      decoder-only transformer with condition cross-attention
  store      corpora, batching, checkpoints
  train      pre-training and fine-tuning loops
  sample     autoregressive generation and scoring
  metrics    validity/uniqueness/novelty/SNN/fragment/W1 evaluation suite
  cli        the `molforge` command
"""

__version__ = "0.1.0"
