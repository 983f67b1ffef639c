import pytest
from hypothesis import given, strategies as st

from molforge.errors import EmptyCorpus, UnknownCharacter
from molforge.tokenizer import (BOS, EOS, PAD, UNK, TokenSeq, Vocab, build_vocab,
                                decode, encode, tokenize)


def test_two_letter_elements_win():
    assert tokenize("CCl") == ["C", "Cl"]
    assert tokenize("CBr") == ["C", "Br"]
    assert tokenize("BrCl") == ["Br", "Cl"]


def test_ring_digits_are_separate_tokens():
    assert tokenize("c1ccccc1") == ["c", "1", "c", "c", "c", "c", "c", "1"]


def test_table_string_has_16_tokens():
    # C N c 1 c c c 2 n c n c c 2 c 1
    assert len(tokenize("CNc1ccc2ncncc2c1")) == 16


def test_bracket_atom_is_one_token():
    assert tokenize("C[nH]1cccc1") == ["C", "[nH]", "1", "c", "c", "c", "c", "1"]
    assert tokenize("[13CH3]O") == ["[13CH3]", "O"]


def test_percent_closure_one_token():
    assert tokenize("C%12CCC%12") == ["C", "%12", "C", "C", "C", "%12"]


def test_unknown_character_offset():
    with pytest.raises(UnknownCharacter) as err:
        tokenize("CCxCC")
    assert err.value.offset == 2


def test_empty_input_rejected():
    with pytest.raises(UnknownCharacter):
        tokenize("")


_TOKENS = ["C", "Cl", "Br", "c", "n", "[nH]", "[O-]", "(", ")", "=", "#",
           "1", "2", "%11", ".", "-", "*", "O", "N", "s"]


@given(st.lists(st.sampled_from(_TOKENS), min_size=1, max_size=40))
def test_tokenize_is_lossless_segmentation(tokens):
    text = "".join(tokens)
    out = tokenize(text)
    assert "".join(out) == text


@given(st.lists(st.sampled_from(_TOKENS), min_size=1, max_size=40))
def test_retokenization_is_stable(tokens):
    # any concatenation of real tokens re-tokenizes to the same list
    assert tokenize("".join(tokens)) == tokens


def test_build_vocab_smallest_corpus():
    v = build_vocab(["CC", "CC"])
    assert len(v) == 5
    assert v.lookup("C") == 4


def test_build_vocab_orders_by_frequency_then_lexicographic():
    v = build_vocab(["CCO", "CN"])
    # C appears 3x, N and O once each -> N before O lexicographically
    assert v.tokens == ("C", "N", "O")


def test_build_vocab_order_independent():
    corpus = ["CCO", "c1ccccc1", "CN(C)C"]
    assert build_vocab(corpus).tokens == build_vocab(reversed(corpus)).tokens


def test_build_vocab_empty_corpus():
    with pytest.raises(EmptyCorpus):
        build_vocab([])


def test_encode_decode_round_trip():
    v = build_vocab(["CCO", "c1ccccc1"])
    seq = encode("CCO", v)
    assert seq.ids[0] == BOS and seq.ids[-1] == EOS
    assert decode(seq, v) == "CCO"


def test_unknown_tokens_map_to_unk_and_are_marked():
    v = build_vocab(["CC"])
    seq = encode("CN", v)
    assert UNK in seq.ids
    assert decode(seq, v) == "C<unk>"


def test_decode_skips_pad():
    v = build_vocab(["CC"])
    assert decode(TokenSeq((BOS, 4, PAD, PAD, EOS)), v) == "C"


def test_vocab_json_round_trip():
    v = build_vocab(["CCOc1ccccc1", "[nH]1cccc1C"])
    again = Vocab.from_json(v.to_json())
    assert again.tokens == v.tokens
    assert again.lookup("[nH]") == v.lookup("[nH]")
