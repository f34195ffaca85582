//! Reference cells of the traveler's dilemma (claims up to 100) and the 11-20
//! game: labels, payoffs, and the rank pair (row agent within its column,
//! column agent within its row).

#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub row: i64,
    pub col: i64,
    pub payoff: (i64, i64),
    pub rank: (usize, usize),
}

/// Includes four inconsistent rank pairs, listed in [`TRAVELERS_BAD_RANKS`].
pub const TRAVELERS: &[Cell] = &[
    Cell {
        row: 100,
        col: 100,
        payoff: (100, 100),
        rank: (2, 2),
    },
    Cell {
        row: 100,
        col: 99,
        payoff: (97, 101),
        rank: (5, 1),
    },
    Cell {
        row: 100,
        col: 98,
        payoff: (96, 100),
        rank: (4, 2),
    },
    Cell {
        row: 100,
        col: 97,
        payoff: (95, 99),
        rank: (5, 4),
    },
    Cell {
        row: 100,
        col: 4,
        payoff: (2, 6),
        rank: (4, 97),
    },
    Cell {
        row: 100,
        col: 3,
        payoff: (1, 5),
        rank: (3, 98),
    },
    Cell {
        row: 100,
        col: 2,
        payoff: (0, 4),
        rank: (2, 99),
    },
    Cell {
        row: 99,
        col: 100,
        payoff: (101, 97),
        rank: (1, 5),
    },
    Cell {
        row: 99,
        col: 99,
        payoff: (99, 99),
        rank: (2, 2),
    },
    Cell {
        row: 99,
        col: 98,
        payoff: (96, 100),
        rank: (4, 1),
    },
    Cell {
        row: 99,
        col: 97,
        payoff: (95, 99),
        rank: (5, 2),
    },
    Cell {
        row: 99,
        col: 4,
        payoff: (2, 6),
        rank: (4, 97),
    },
    Cell {
        row: 99,
        col: 3,
        payoff: (1, 5),
        rank: (3, 98),
    },
    Cell {
        row: 99,
        col: 2,
        payoff: (0, 4),
        rank: (2, 99),
    },
    Cell {
        row: 98,
        col: 100,
        payoff: (100, 96),
        rank: (2, 4),
    },
    Cell {
        row: 98,
        col: 99,
        payoff: (100, 96),
        rank: (1, 4),
    },
    Cell {
        row: 98,
        col: 98,
        payoff: (98, 98),
        rank: (2, 2),
    },
    Cell {
        row: 98,
        col: 97,
        payoff: (95, 99),
        rank: (5, 1),
    },
    Cell {
        row: 98,
        col: 4,
        payoff: (2, 6),
        rank: (4, 97),
    },
    Cell {
        row: 98,
        col: 3,
        payoff: (1, 5),
        rank: (3, 98),
    },
    Cell {
        row: 98,
        col: 2,
        payoff: (0, 4),
        rank: (2, 99),
    },
    Cell {
        row: 97,
        col: 100,
        payoff: (99, 95),
        rank: (4, 5),
    },
    Cell {
        row: 97,
        col: 99,
        payoff: (99, 95),
        rank: (2, 5),
    },
    Cell {
        row: 97,
        col: 98,
        payoff: (99, 95),
        rank: (1, 5),
    },
    Cell {
        row: 97,
        col: 97,
        payoff: (97, 97),
        rank: (2, 2),
    },
    Cell {
        row: 97,
        col: 4,
        payoff: (2, 6),
        rank: (4, 97),
    },
    Cell {
        row: 97,
        col: 3,
        payoff: (1, 5),
        rank: (3, 98),
    },
    Cell {
        row: 97,
        col: 2,
        payoff: (0, 4),
        rank: (2, 99),
    },
    Cell {
        row: 4,
        col: 100,
        payoff: (6, 2),
        rank: (97, 4),
    },
    Cell {
        row: 4,
        col: 99,
        payoff: (6, 2),
        rank: (97, 4),
    },
    Cell {
        row: 4,
        col: 98,
        payoff: (6, 2),
        rank: (97, 4),
    },
    Cell {
        row: 4,
        col: 97,
        payoff: (6, 2),
        rank: (97, 4),
    },
    Cell {
        row: 4,
        col: 4,
        payoff: (4, 4),
        rank: (2, 2),
    },
    Cell {
        row: 4,
        col: 3,
        payoff: (1, 5),
        rank: (3, 1),
    },
    Cell {
        row: 4,
        col: 2,
        payoff: (0, 4),
        rank: (2, 2),
    },
    Cell {
        row: 3,
        col: 100,
        payoff: (5, 1),
        rank: (98, 3),
    },
    Cell {
        row: 3,
        col: 99,
        payoff: (5, 1),
        rank: (98, 3),
    },
    Cell {
        row: 3,
        col: 98,
        payoff: (5, 1),
        rank: (98, 3),
    },
    Cell {
        row: 3,
        col: 97,
        payoff: (5, 1),
        rank: (98, 3),
    },
    Cell {
        row: 3,
        col: 4,
        payoff: (5, 1),
        rank: (1, 3),
    },
    Cell {
        row: 3,
        col: 3,
        payoff: (3, 3),
        rank: (2, 2),
    },
    Cell {
        row: 3,
        col: 2,
        payoff: (0, 4),
        rank: (2, 1),
    },
    Cell {
        row: 2,
        col: 100,
        payoff: (4, 0),
        rank: (99, 2),
    },
    Cell {
        row: 2,
        col: 99,
        payoff: (4, 0),
        rank: (99, 2),
    },
    Cell {
        row: 2,
        col: 98,
        payoff: (4, 0),
        rank: (99, 2),
    },
    Cell {
        row: 2,
        col: 97,
        payoff: (4, 0),
        rank: (99, 2),
    },
    Cell {
        row: 2,
        col: 4,
        payoff: (4, 0),
        rank: (2, 2),
    },
    Cell {
        row: 2,
        col: 3,
        payoff: (4, 0),
        rank: (1, 2),
    },
    Cell {
        row: 2,
        col: 2,
        payoff: (2, 2),
        rank: (1, 1),
    },
];

/// Cells whose reference rank pair disagrees with `1 + #strictly better`,
/// with the rank pair the definition gives.
pub const TRAVELERS_BAD_RANKS: &[(i64, i64, (usize, usize))] =
    &[(100, 98, (5, 2)), (99, 98, (5, 1)), (98, 100, (2, 5)), (98, 99, (1, 5))];

pub const ELEVEN_TWENTY: &[Cell] = &[
    Cell {
        row: 20,
        col: 20,
        payoff: (20, 20),
        rank: (2, 2),
    },
    Cell {
        row: 20,
        col: 19,
        payoff: (20, 39),
        rank: (2, 1),
    },
    Cell {
        row: 20,
        col: 18,
        payoff: (20, 18),
        rank: (2, 3),
    },
    Cell {
        row: 20,
        col: 17,
        payoff: (20, 17),
        rank: (2, 4),
    },
    Cell {
        row: 20,
        col: 16,
        payoff: (20, 16),
        rank: (2, 5),
    },
    Cell {
        row: 20,
        col: 12,
        payoff: (20, 12),
        rank: (2, 9),
    },
    Cell {
        row: 20,
        col: 11,
        payoff: (20, 11),
        rank: (1, 10),
    },
    Cell {
        row: 19,
        col: 20,
        payoff: (39, 20),
        rank: (1, 2),
    },
    Cell {
        row: 19,
        col: 19,
        payoff: (19, 19),
        rank: (3, 3),
    },
    Cell {
        row: 19,
        col: 18,
        payoff: (19, 38),
        rank: (3, 1),
    },
    Cell {
        row: 19,
        col: 17,
        payoff: (19, 17),
        rank: (3, 4),
    },
    Cell {
        row: 19,
        col: 16,
        payoff: (19, 16),
        rank: (3, 5),
    },
    Cell {
        row: 19,
        col: 12,
        payoff: (19, 12),
        rank: (3, 9),
    },
    Cell {
        row: 19,
        col: 11,
        payoff: (19, 11),
        rank: (2, 10),
    },
    Cell {
        row: 18,
        col: 20,
        payoff: (18, 20),
        rank: (3, 2),
    },
    Cell {
        row: 18,
        col: 19,
        payoff: (38, 19),
        rank: (1, 3),
    },
    Cell {
        row: 18,
        col: 18,
        payoff: (18, 18),
        rank: (4, 4),
    },
    Cell {
        row: 18,
        col: 17,
        payoff: (18, 37),
        rank: (4, 1),
    },
    Cell {
        row: 18,
        col: 16,
        payoff: (18, 16),
        rank: (4, 5),
    },
    Cell {
        row: 18,
        col: 12,
        payoff: (18, 12),
        rank: (4, 9),
    },
    Cell {
        row: 18,
        col: 11,
        payoff: (18, 11),
        rank: (3, 10),
    },
    Cell {
        row: 17,
        col: 20,
        payoff: (17, 20),
        rank: (4, 2),
    },
    Cell {
        row: 17,
        col: 19,
        payoff: (17, 19),
        rank: (4, 3),
    },
    Cell {
        row: 17,
        col: 18,
        payoff: (37, 18),
        rank: (1, 4),
    },
    Cell {
        row: 17,
        col: 17,
        payoff: (17, 17),
        rank: (5, 5),
    },
    Cell {
        row: 17,
        col: 16,
        payoff: (17, 36),
        rank: (5, 1),
    },
    Cell {
        row: 17,
        col: 12,
        payoff: (17, 12),
        rank: (5, 9),
    },
    Cell {
        row: 17,
        col: 11,
        payoff: (17, 11),
        rank: (4, 10),
    },
    Cell {
        row: 16,
        col: 20,
        payoff: (16, 20),
        rank: (5, 2),
    },
    Cell {
        row: 16,
        col: 19,
        payoff: (16, 19),
        rank: (5, 3),
    },
    Cell {
        row: 16,
        col: 18,
        payoff: (16, 18),
        rank: (5, 4),
    },
    Cell {
        row: 16,
        col: 17,
        payoff: (36, 17),
        rank: (1, 5),
    },
    Cell {
        row: 16,
        col: 16,
        payoff: (16, 16),
        rank: (6, 6),
    },
    Cell {
        row: 16,
        col: 12,
        payoff: (16, 12),
        rank: (6, 9),
    },
    Cell {
        row: 16,
        col: 11,
        payoff: (16, 11),
        rank: (5, 10),
    },
    Cell {
        row: 12,
        col: 20,
        payoff: (12, 20),
        rank: (9, 2),
    },
    Cell {
        row: 12,
        col: 19,
        payoff: (12, 19),
        rank: (9, 3),
    },
    Cell {
        row: 12,
        col: 18,
        payoff: (12, 18),
        rank: (9, 4),
    },
    Cell {
        row: 12,
        col: 17,
        payoff: (12, 17),
        rank: (9, 5),
    },
    Cell {
        row: 12,
        col: 16,
        payoff: (12, 16),
        rank: (9, 6),
    },
    Cell {
        row: 12,
        col: 12,
        payoff: (12, 12),
        rank: (10, 10),
    },
    Cell {
        row: 12,
        col: 11,
        payoff: (12, 31),
        rank: (9, 1),
    },
    Cell {
        row: 11,
        col: 20,
        payoff: (11, 20),
        rank: (10, 1),
    },
    Cell {
        row: 11,
        col: 19,
        payoff: (11, 19),
        rank: (10, 2),
    },
    Cell {
        row: 11,
        col: 18,
        payoff: (11, 18),
        rank: (10, 3),
    },
    Cell {
        row: 11,
        col: 17,
        payoff: (11, 17),
        rank: (10, 4),
    },
    Cell {
        row: 11,
        col: 16,
        payoff: (11, 16),
        rank: (10, 5),
    },
    Cell {
        row: 11,
        col: 12,
        payoff: (31, 12),
        rank: (1, 9),
    },
    Cell {
        row: 11,
        col: 11,
        payoff: (11, 11),
        rank: (10, 10),
    },
];
