//! Known 2-packings of K(3r-3, r) for r = 4..8.

use crate::error::{param_err, Result};
use crate::kneser::{KneserParams, VertexFamily};

pub(crate) const TABLE3: [(u32, &[&[u32]]); 5] = [
    (
        4,
        &[
            &[1, 2, 3, 5],
            &[1, 2, 6, 9],
            &[1, 2, 7, 8],
            &[1, 3, 4, 6],
            &[1, 4, 5, 8],
            &[1, 4, 7, 9],
            &[2, 3, 4, 7],
            &[2, 4, 5, 6],
            &[2, 4, 8, 9],
            &[3, 5, 7, 9],
            &[3, 6, 8, 9],
            &[5, 6, 7, 8],
        ],
    ),
    (
        5,
        &[
            &[1, 2, 3, 4, 8],
            &[1, 2, 5, 10, 11],
            &[1, 2, 6, 9, 12],
            &[1, 3, 7, 9, 10],
            &[1, 4, 5, 7, 12],
            &[1, 6, 7, 8, 11],
            &[2, 3, 5, 6, 7],
            &[2, 4, 7, 9, 11],
            &[2, 7, 8, 10, 12],
            &[3, 4, 6, 10, 11],
            &[3, 5, 9, 11, 12],
            &[4, 5, 6, 8, 9],
        ],
    ),
    (
        6,
        &[
            &[1, 2, 3, 4, 5, 11],
            &[1, 2, 7, 8, 9, 14],
            &[1, 3, 6, 9, 10, 15],
            &[1, 5, 6, 12, 13, 14],
            &[2, 4, 6, 7, 13, 15],
            &[2, 5, 8, 10, 12, 15],
            &[3, 4, 8, 10, 13, 14],
            &[3, 6, 7, 8, 11, 12],
            &[4, 9, 11, 12, 14, 15],
            &[5, 7, 9, 10, 11, 13],
        ],
    ),
    (
        7,
        &[
            &[1, 2, 3, 4, 6, 11, 14],
            &[1, 3, 5, 8, 16, 17, 18],
            &[2, 4, 5, 7, 12, 15, 17],
            &[2, 8, 9, 12, 13, 14, 16],
            &[3, 7, 8, 9, 10, 11, 15],
            &[4, 5, 6, 9, 10, 13, 18],
        ],
    ),
    (
        8,
        &[
            &[1, 2, 3, 4, 5, 6, 9, 18],
            &[1, 2, 7, 11, 12, 14, 20, 21],
            &[3, 7, 8, 9, 13, 15, 16, 20],
            &[4, 5, 10, 12, 13, 15, 17, 21],
            &[5, 6, 8, 10, 11, 14, 16, 19],
        ],
    ),
];

/// Rows of the table, in order of r.
pub fn table3_rows() -> impl Iterator<Item = u32> {
    TABLE3.iter().map(|(r, _)| *r)
}

/// The embedded 2-packing of K(3r-3, r), for r in 4..=8.
pub fn table3_packing(r: u32) -> Result<VertexFamily> {
    let Some((_, sets)) = TABLE3.iter().find(|(row, _)| *row == r) else {
        return param_err(format!("no tabulated packing for r = {r}; rows are 4..=8"));
    };
    let params = KneserParams::new(3 * r - 3, r)?;
    VertexFamily::from_sets(params, sets)
}
