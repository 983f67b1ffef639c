VALID = [
    # paper Table I strings
    "CCc1cc(N=c2[nH]cc(-c3ccccc3N(C)C(=O)CN3CCOCC3)o2)ccc1-c1cnco1",
    "CN(C)CC1CCc2cc(-n3cnc4cc(-c5ccc(Cl)cc5)sc4c3=O)ccc2C1",
    "COc1ccc(S(=O)(=O)N2CCCCC2)cc1NC(O)c1cc(O)n(-c2ccc3c(c2)OCCO3)c1",
    "CNc1ccc2ncncc2c1",
    "Cc1ccccc1C(=O)Nc1ccc2[nH]cc(C3CCN(C)CC3)c2n1",
    "O=C(O)C1CN(Cc2ccc(-c3nc4ccc(C5(c6ccccc6)CCCCC5)nc4s3)c(F)c2)C1",
    # chains and branches
    "C", "CC", "CCO", "OCC", "CC(C)C", "CC(C)(C)C", "CCCCCCCCCC",
    "CC(C)CC(C)(C)C", "CCOCC", "CCNCC", "CCSCC", "CN(C)C",
    # multiple bonds
    "C=C", "C#C", "C#N", "CC=O", "O=C=O", "N#N", "C=C=C", "CC#CC",
    "CC(=O)C", "CC(=O)O", "CC(=O)N", "C=N", "CN=O", "CC=NO",
    # rings, closures, spiro, fused
    "C1CC1", "C1CCC1", "C1CCCC1", "C1CCCCC1", "C1CCCCCC1", "C1CCCCCCC1",
    "C1CC1C1CC1", "C1CCC2(CC1)CCCC2", "C1CC2CCC1C2", "C%10CCCC%10",
    "C1CCCCCCCCCCC1", "C1=CC=CC=C1", "C=1C=CC=CC=1", "C1=CCCCC1",
    "C1CC=CC1", "O1CCOCC1", "N1CCNCC1", "S1CCCC1", "C1CN1", "C1CO1",
    # aromatics
    "c1ccccc1", "Cc1ccccc1", "CCc1ccccc1", "c1ccncc1", "c1cncnc1",
    "c1cnccn1", "c1ccoc1", "c1ccsc1", "c1cc[nH]c1", "c1cnc[nH]1",
    "c1ocnc1", "c1scnc1", "c1ccc2ccccc2c1", "c1ccc2ncccc2c1",
    "c1ccc2[nH]ccc2c1", "c1ccc2occc2c1", "c1ccc2sccc2c1",
    "Cn1cccc1", "Cn1cnc2c1c(=O)n(C)c(=O)n2C", "O=c1cc[nH]cc1",
    "Nc1ccccc1", "Oc1ccccc1", "COc1ccccc1", "NC(=O)c1ccccc1",
    "OC(=O)c1ccccc1", "O=[N+]([O-])c1ccccc1", "Fc1ccccc1", "Clc1ccccc1",
    "Brc1ccccc1", "Ic1ccccc1", "c1ccc(-c2ccccc2)cc1", "c1ccccc1c1ccccc1",
    "Cc1ccc(C)cc1", "Cc1cccc(C)c1", "Cc1ccccc1C", "c1cc2cccc3cccc1c23",
    # brackets, isotopes, charges, stereo annotations
    "[H][H]", "[2H]O[2H]", "[13CH4]", "[NH4+]", "[Na+].[Cl-]",
    "[O-]c1ccccc1", "C[N+](C)(C)C", "CC(=O)[O-]", "[NH3+]CC(=O)[O-]",
    "N[C@@H](C)C(=O)O", "N[C@H](C)C(=O)O", "F/C=C/F", "F/C=C\\F",
    "[O-2]", "[Fe+2]", "[Cu+2].[O-2]", "[SiH4]", "[SeH2]", "c1cc[se]c1",
    "[nH]1cccc1", "[cH-]1cccc1", "[O-][n+]1ccccc1",
    # hypervalent S and P
    "CS(=O)(=O)C", "CS(C)=O", "CS(=O)(=O)O", "NS(=O)(=O)c1ccc(N)cc1",
    "OP(=O)(O)O", "CP(C)C", "COP(=O)(OC)OC", "FS(F)(F)(F)(F)F",
    # boron
    "B(O)(O)c1ccccc1", "CB(C)C", "OB(O)O",
    # dots
    "CCO.OCC", "C.C", "[NH4+].[NH4+].[O-]S(=O)(=O)[O-]",
    # drug-like
    "CC(=O)Oc1ccccc1C(=O)O", "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
    "CC(=O)Nc1ccc(O)cc1", "CN1CCCC1c1cccnc1", "O=C(N1CCOCC1)c1ccccc1",
    "CN1CCN(CC1)c1ccccc1", "FC(F)(F)c1ccccc1", "N#Cc1ccccc1",
    "Clc1ccc(CN2CCN(C)CC2)cc1", "CC(C)(C)OC(=O)N1CCC(N)CC1",
    "COc1cc2c(cc1OC)CCN(C)C2", "O=C(O)CCCCCCCCC=C", "CCCCN(CCCC)CCCC",
    "CC1(C)CCCC1", "CC12CCC(C1)C2", "OCC1OC(O)C(O)C(O)C1O",
    "Cc1ncc([N+](=O)[O-])n1CCO", "CCOC(=O)c1ccccc1", "c1ccc(Cc2ccccc2)cc1",
    "CSc1ccccc1", "CCOc1ccccc1OCC", "O=S(=O)(O)O", "NC(N)=O", "NC(=S)N",
    "CC(C)=CC", "CC/C=C/CC", "C1CC1c1ccccc1", "OC1CCCCC1O",
]
INVALID = [
    # parse errors: rings, parens, tokens
    "C1CC", "CC1", "C1CC2CC1", "c1ccccc12", "C(C", "CC)C", "((CC))",
    "C(C))C", "C()C", "CC(", "(CC)", "C..C", ".CC", "CC.", "C%1C",
    "C%C", "Xx", "CZ", "c1ccccc1$", "[Qq]", "[C", "[]", "[13]",
    "C=", "=CC", "C==C", "C=-C", "C=)C", "C(=)C", "C--C", "C:C",
    "C11", "C1C1", "c&c", "CC=.CC", "C#", "%12CC%12", "C@C",
    # valence violations
    "C(C)(C)(C)(C)C", "O(C)(C)C", "N(C)(C)(C)C", "F(C)C", "FF(F)F",
    "ClC(Cl)(Cl)(Cl)Cl", "O=O=O", "[CH5]", "[OH3]", "[NH4]", "C#C#C",
    "O=C(=O)O", "CC(=O)(=O)C", "N(=O)(=O)C", "I(C)C", "Br=C",
    "[H]([H])[H]", "[BH4]", "[PH6]", "[SH7]", "O#C", "N=N=N=N",
    # aromatic system failures
    "c1ccc1", "c1ccccccc1", "cc", "ccc", "c1cc1", "Cc", "cC",
    "n1cccc1", "c1cncn1", "o1ccccc1", "s1ccccc1", "c1ccccn1C",
    "O=c1ccccc1", "c1ccccc1(C)C", "[nH]1ccccc1", "o1cccc1c", "cn",
    "c1ccc2cc3cc4cc5cccc5cc4cc3cc2c1",
    # bracket atom problems
    "[N+]", "[O-]", "[OH2+2]", "[CH2]", "[CH]", "[NH]", "[SH3]",
    "[C+5]C", "[ClH3]",
]
