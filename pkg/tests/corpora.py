"""Shared training corpora for tests: fixed, hand-assembled literals.

OVERFIT_32: 32 valid strings with 32 distinct first tokens (so a memorizing
model can reproduce each from its first token by greedy decoding) and ~90
tokens each (so the unavoidable first-token entropy, 32*ln(32) nats total,
spreads thin enough for per-token NLL to reach 0.05).
"""

from molforge.rng import Rng

OVERFIT_32 = [
    "Cc1ccc(NC)cc1CC(O)CCCCc1ccc(F)cc1CC(C)OCSCC(N)CNC(=O)CCCCc1ccc(F)cc1CC(=O)NCCC(C)OCCC(=O)NCC",
    "NCCc1ccc(F)cc1CC(=O)NCCCc1ccc(F)cc1NC(=O)CCCC(C)OCNC(=O)CCCN(C)C(=O)CCC(=O)NCCC(O)CCc1ccc(NC)cc1C",
    "OCC(=O)NCSCC(N)CCC(C)OCCCOC(=O)CCC(O)CCCCc1ccc(F)cc1CCc1ccc(F)cc1c1ccc(NC)cc1OCCOCc1ccc(NC)cc1C",
    "SSCC(N)CNC(=O)CCCN(C)C(=O)CCCc1ccc(F)cc1NC(=O)CCNC(=O)CCCCc1ccc(F)cc1CC(=O)NCCC(=O)NCSCC(N)CC",
    "P(=O)(O)OCN(C)C(=O)Cc1ccc(NC)cc1CC(C)OCCN(C)C(=O)CCCN(CC)CCOc1ccc(CC)cc1SCC(N)Cc1ccc(NC)cc1C",
    "B(O)OCCc1ccc(F)cc1CC(=O)NCSCC(N)COCCOCSCC(N)CCC(O)CCOCCOCCC(O)CCCC(O)CCCCN(CC)CCC(C)OCC",
    "FNC(=O)CCCCOC(=O)CCOc1ccc(CC)cc1SCC(N)CCCc1ccc(F)cc1CCN(CC)CCCc1ccc(F)cc1SCC(N)COCCOCOCCOCC",
    "ClCCc1ccc(F)cc1CCOC(=O)CCC(=O)NCCC(=O)NCCC(=O)NCCCOC(=O)CCCc1ccc(F)cc1OCCOCCC(O)CCCN(C)C(=O)CC",
    "Brc1ccc(NC)cc1CCc1ccc(F)cc1c1ccc(NC)cc1CCN(CC)CCC(O)CCCCOC(=O)CCC(C)OCCC(C)OCCN(C)C(=O)CC",
    "ICC(O)CCOCCOCCCc1ccc(F)cc1CN(C)C(=O)CNC(=O)CCNC(=O)CCCC(C)OCCC(=O)NCOCCOCCN(C)C(=O)CCN(C)C(=O)CC",
    "c1ccccc1CN(C)C(=O)CNC(=O)CCCCN(CC)CCC(C)OCCCc1ccc(F)cc1OCCOCCCc1ccc(F)cc1c1ccc(NC)cc1OCCOCC",
    "n1ccccc1COc1ccc(CC)cc1CCOC(=O)CCC(C)OCCC(C)OCCOc1ccc(CC)cc1CC(=O)NCc1ccc(NC)cc1CCN(CC)CC",
    "o1cccc1OCCOCOCCOCCOc1ccc(CC)cc1CCc1ccc(F)cc1NC(=O)CCSCC(N)CNC(=O)CCSCC(N)CCC(O)CCCC(=O)NCC",
    "s1cccc1OCCOCNC(=O)CCCOc1ccc(CC)cc1CCc1ccc(F)cc1SCC(N)CCC(O)CCOCCOCSCC(N)CSCC(N)CCCc1ccc(F)cc1C",
    "[CH3]CCc1ccc(F)cc1CN(C)C(=O)COCCOCCCOC(=O)CCCOC(=O)CCCN(CC)CCCOC(=O)CCC(O)CCOCCOCNC(=O)CCSCC(N)CC",
    "[NH2]SCC(N)CCC(O)CCOCCOCOCCOCCCN(CC)CCN(C)C(=O)CCCOC(=O)CCC(C)OCCCc1ccc(F)cc1COc1ccc(CC)cc1C",
    "[OH]CC(C)OCCCN(CC)CCCOC(=O)CCCOC(=O)Cc1ccc(NC)cc1SCC(N)COCCOCCC(C)OCCCc1ccc(F)cc1COc1ccc(CC)cc1C",
    "[SH]CC(=O)NCCCN(CC)CNC(=O)CCc1ccc(NC)cc1NC(=O)CCCCOC(=O)CCC(=O)NCCCOC(=O)CSCC(N)CCC(C)OCCC(O)CCC",
    "[PH2]CCc1ccc(F)cc1CC(O)CCCCOC(=O)CCN(C)C(=O)COCCOCCC(C)OCCCOC(=O)CCCOC(=O)CSCC(N)CCC(C)OCCOc1ccc(CC)cc1C",
    "[BH2]CC(O)CCCOc1ccc(CC)cc1CC(O)CCCCN(CC)CSCC(N)Cc1ccc(NC)cc1COc1ccc(CC)cc1c1ccc(NC)cc1c1ccc(NC)cc1C",
    "[NH3+]CCOCCCOC(=O)CNC(=O)CCNC(=O)CCCC(C)OCSCC(N)CCN(C)C(=O)CCOc1ccc(CC)cc1CC(C)OCNC(=O)CCOCCOCC",
    "[O-]C(=O)CCNc1ccc(NC)cc1SCC(N)CCC(O)CCc1ccc(NC)cc1OCCOCCCc1ccc(F)cc1CCOC(=O)CSCC(N)CCCc1ccc(F)cc1C",
    "[nH]1cccc1CN(C)C(=O)CCC(O)CCSCC(N)CCC(=O)NCCOc1ccc(CC)cc1OCCOCSCC(N)CCC(C)OCCCOC(=O)CCC(C)OCC",
    "[13CH3]CC(O)CCCN(C)C(=O)CNC(=O)CCCC(=O)NCSCC(N)CCC(O)CCCCOC(=O)CCCN(CC)CSCC(N)CNC(=O)CCCC(C)OCC",
    "[2H]OCCNC(=O)CCNC(=O)CCNC(=O)CCCC(C)OCCCN(CC)CCCOC(=O)CCCOC(=O)CCN(C)C(=O)CSCC(N)COCCOCCCOC(=O)CC",
    "[SeH]CC(C)OCCCc1ccc(F)cc1CC(O)CCCCOC(=O)Cc1ccc(NC)cc1c1ccc(NC)cc1CCOC(=O)CCC(C)OCOCCOCCN(C)C(=O)CC",
    "[SiH3]c1ccc(NC)cc1CCN(CC)CCC(C)OCCN(C)C(=O)CCC(C)OCNC(=O)CCCC(O)CCSCC(N)CSCC(N)CCC(O)CCNC(=O)CCC",
    "[N+](C)(C)(C)CCOCCC(O)CCc1ccc(NC)cc1NC(=O)CCCN(C)C(=O)CCC(=O)NCCCc1ccc(F)cc1NC(=O)CCCCN(CC)CC",
    "[CH](C)1CC1CCc1ccc(F)cc1COc1ccc(CC)cc1CCN(CC)CNC(=O)CCCOc1ccc(CC)cc1OCCOCSCC(N)COCCOCCC(C)OCC",
    "[NH]1CCCC1CC(O)CCCCN(CC)CCC(O)CCc1ccc(NC)cc1CC(C)OCCCc1ccc(F)cc1CC(=O)NCCC(O)CCc1ccc(NC)cc1C",
    "[OH2+]CCOCCOc1ccc(CC)cc1CC(O)CCOCCOCCN(C)C(=O)COCCOCNC(=O)CCCCOC(=O)Cc1ccc(NC)cc1CCN(CC)CCC(O)CCC",
    "[Cl-].OCCCN(C)C(=O)COCCOCCC(O)CCCN(C)C(=O)CCOc1ccc(CC)cc1SCC(N)CCCOC(=O)CCCOC(=O)Cc1ccc(NC)cc1C",
]


def halogen_corpus(halogen: str, seed: int, n: int = 200) -> list[str]:
    """Acyclic molecules that each carry 2-3 of one halogen and none of the
    other; the synthetic two-target fine-tuning corpus."""
    rng = Rng(seed)
    units = ["C", "CC", "CO", "CN(C)", "CC(C)"]
    out: list[str] = []
    seen: set[str] = set()
    while len(out) < n:
        length = rng.integers(3, 7)
        s = ""
        count = 0
        for _ in range(length):
            s += units[rng.integers(0, len(units))]
            if count < 3 and rng.uniform() < 0.5:
                s += "C(" + halogen + ")"
                count += 1
        if count >= 2 and s not in seen:
            seen.add(s)
            out.append(s)
    return out
