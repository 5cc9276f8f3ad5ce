use std::fmt;

use serde::{Deserialize, Serialize};

/// The inference rules, each tied to the statement it encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Every invariant is at least 1.
    Unnormalized,
    /// A user assertion.
    Asserted,
    R1,
    R2,
    R3,
    R4,
    R4b,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
    R15,
    R16,
    R17,
    R18,
    R19,
}

impl Rule {
    pub const ALL: [Rule; 22] = [
        Rule::Unnormalized,
        Rule::Asserted,
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4,
        Rule::R4b,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R10,
        Rule::R11,
        Rule::R12,
        Rule::R13,
        Rule::R14,
        Rule::R15,
        Rule::R16,
        Rule::R17,
        Rule::R18,
        Rule::R19,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Unnormalized => "N",
            Rule::Asserted => "A",
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R4b => "R4b",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::R7 => "R7",
            Rule::R8 => "R8",
            Rule::R9 => "R9",
            Rule::R10 => "R10",
            Rule::R11 => "R11",
            Rule::R12 => "R12",
            Rule::R13 => "R13",
            Rule::R14 => "R14",
            Rule::R15 => "R15",
            Rule::R16 => "R16",
            Rule::R17 => "R17",
            Rule::R18 => "R18",
            Rule::R19 => "R19",
        }
    }

    /// The statement the rule encodes.
    pub fn citation(self) -> &'static str {
        match self {
            Rule::Unnormalized => "§2 Remark",
            Rule::Asserted => "user assertion",
            Rule::R1 => "Prop. (cohomological lower bound)",
            Rule::R2 => "Prop. (Švarc)",
            Rule::R3 => "Prop. (cat ≤ TC ≤ cat of square)",
            Rule::R4 => "Prop. (dimension upper bound)",
            Rule::R4b => "classical dimension bound for cat",
            Rule::R5 => "Theorem productI (trivial group)",
            Rule::R6 => "Prop. X/G",
            Rule::R7 => "Corollary subgroups (1)",
            Rule::R8 => "Corollary subgroups (2)",
            Rule::R9 => "Corollary (not G-connected)",
            Rule::R10 => "Prop. upper",
            Rule::R11 => "Prop. lower",
            Rule::R12 => "Corollary catfixed (1)",
            Rule::R13 => "Corollary catfixed (2)",
            Rule::R14 => "Theorem productI",
            Rule::R15 => "Theorem productII",
            Rule::R16 => "Prop. topgroups",
            Rule::R17 => "Theorem catgrp",
            Rule::R18 => "Theorem fred",
            Rule::R19 => "§5",
        }
    }

    pub fn quote(self) -> &'static str {
        match self {
            Rule::Unnormalized => "invariants are un-normalized",
            Rule::Asserted => "",
            Rule::R1 => "TC(X) > nil 𝒵_𝕜 for any field",
            Rule::R2 => "secat(p) > nil ker p^*",
            Rule::R3 => "cat(X) ≤ TC(X) ≤ cat(X×X)",
            Rule::R4 => "where dim denotes the covering dimension",
            Rule::R4b => "cat(X) ≤ dim X + 1 for connected X",
            Rule::R5 => "cat_G(X×Y) ≤ cat_G(X) + cat_G(Y) − 1",
            Rule::R6 => "the non-equivariant category of the orbit space",
            Rule::R7 => "for all closed subgroups H",
            Rule::R8 => "TC_K(X) ≤ TC_G(X)",
            Rule::R9 => "not G-connected, then TC_G(X) = ∞",
            Rule::R10 => "TC_G(X) ≤ cat_G(X×X)",
            Rule::R11 => "the isotropy group of some z ∈ X",
            Rule::R12 => "cat_G(X) ≤ TC_G(X) ≤ 2cat_G(X) − 1",
            Rule::R13 => "if and only if X is G-contractible",
            Rule::R14 => "If X^G ≠ ∅ or Y^G ≠ ∅",
            Rule::R15 => "cat_{G×K}(X×Y) ≤ cat_G(X) + cat_K(Y) − 1",
            Rule::R16 => "acts on X by topological group homomorphisms",
            Rule::R17 => "acting on itself by left translation",
            Rule::R18 => "TC(X_G) ≤ TC_G(X) TC(B)",
            Rule::R19 => "It is obvious that TC(X) ≤ TC_G(X)",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}
