//! The tic-tac-toe endgame table: every distinct board at which a game with
//! `x` moving first has ended, labelled `positive` exactly when `x` won.

use std::collections::BTreeSet;

use corrsets_core::RawTable;

pub const COLUMNS: [&str; 10] = [
    "top-left-square",
    "top-middle-square",
    "top-right-square",
    "middle-left-square",
    "middle-middle-square",
    "middle-right-square",
    "bottom-left-square",
    "bottom-middle-square",
    "bottom-right-square",
    "Class",
];

const LINES: [[usize; 3]; 8] =
    [[0, 1, 2], [3, 4, 5], [6, 7, 8], [0, 3, 6], [1, 4, 7], [2, 5, 8], [0, 4, 8], [2, 4, 6]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Cell {
    X,
    O,
    Blank,
}

impl Cell {
    fn token(self) -> &'static str {
        match self {
            Cell::X => "x",
            Cell::O => "o",
            Cell::Blank => "b",
        }
    }
}

type Board = [Cell; 9];

fn winner(board: &Board) -> Option<Cell> {
    LINES.iter().find_map(|&[a, b, c]| {
        (board[a] != Cell::Blank && board[a] == board[b] && board[b] == board[c]).then_some(board[a])
    })
}

fn collect(board: &mut Board, to_move: Cell, out: &mut BTreeSet<Board>) {
    if winner(board).is_some() || !board.contains(&Cell::Blank) {
        out.insert(*board);
        return;
    }
    let next = if to_move == Cell::X { Cell::O } else { Cell::X };
    for i in 0..9 {
        if board[i] == Cell::Blank {
            board[i] = to_move;
            collect(board, next, out);
            board[i] = Cell::Blank;
        }
    }
}

/// All terminal boards as string rows, in a fixed order.
pub fn rows() -> Vec<Vec<String>> {
    let mut boards = BTreeSet::new();
    collect(&mut [Cell::Blank; 9], Cell::X, &mut boards);
    boards
        .iter()
        .map(|b| {
            let mut row: Vec<String> = b.iter().map(|c| c.token().to_string()).collect();
            let class = if winner(b) == Some(Cell::X) { "positive" } else { "negative" };
            row.push(class.to_string());
            row
        })
        .collect()
}

pub fn table() -> RawTable {
    let names = COLUMNS.iter().map(|s| s.to_string()).collect();
    RawTable::from_rows(names, &rows()).expect("rows have ten fields")
}

/// The table as CSV text with a header line.
pub fn csv_text() -> String {
    let mut out = COLUMNS.join(",");
    out.push('\n');
    for row in rows() {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
