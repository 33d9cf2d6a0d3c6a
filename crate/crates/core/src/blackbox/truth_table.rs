use crate::error::{GpError, Result};

/// Largest supported number of inputs for an exhaustive table (2^20 rows).
pub const MAX_TABLE_INPUTS: usize = 20;

/// Fully specified multi-output Boolean function.
///
/// Row `r` assigns input `i` the bit `(r >> i) & 1`. Each output column is
/// packed 64 rows per word, row `r` at bit `r % 64` of word `r / 64`; bits past
/// the last row are zero. Equality ignores `name`.
#[derive(Clone, Debug)]
pub struct TruthTable {
    n_inputs: usize,
    n_outputs: usize,
    outputs: Vec<Vec<u64>>,
    pub name: String,
}

impl PartialEq for TruthTable {
    fn eq(&self, other: &Self) -> bool {
        self.n_inputs == other.n_inputs
            && self.n_outputs == other.n_outputs
            && self.outputs == other.outputs
    }
}

impl Eq for TruthTable {}

/// Standard bit pattern of input `i < 6` within one 64-row word.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn check_inputs(what: &str, n_inputs: usize) -> Result<()> {
    if n_inputs == 0 {
        return Err(GpError::config(format!("{what}: a truth table needs at least one input")));
    }
    if n_inputs > MAX_TABLE_INPUTS {
        return Err(GpError::SizeLimit {
            what: what.to_string(),
            requested: n_inputs,
            limit: MAX_TABLE_INPUTS,
        });
    }
    Ok(())
}

impl TruthTable {
    /// Builds a table from a row function returning output bits (output `j` at bit `j`).
    pub fn from_fn(
        name: impl Into<String>,
        n_inputs: usize,
        n_outputs: usize,
        mut row: impl FnMut(u64) -> u64,
    ) -> Result<Self> {
        let name = name.into();
        check_inputs(&name, n_inputs)?;
        if n_outputs == 0 || n_outputs > 64 {
            return Err(GpError::config(format!("{name}: output count must lie in [1, 64]")));
        }
        let rows = 1u64 << n_inputs;
        let words = Self::word_count(n_inputs);
        let mut outputs = vec![vec![0u64; words]; n_outputs];
        for r in 0..rows {
            let bits = row(r);
            for (j, col) in outputs.iter_mut().enumerate() {
                if (bits >> j) & 1 == 1 {
                    col[(r / 64) as usize] |= 1 << (r % 64);
                }
            }
        }
        Ok(TruthTable {
            n_inputs,
            n_outputs,
            outputs,
            name,
        })
    }

    fn word_count(n_inputs: usize) -> usize {
        (1usize << n_inputs).div_ceil(64)
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn n_rows(&self) -> u64 {
        1 << self.n_inputs
    }

    pub fn n_words(&self) -> usize {
        self.outputs[0].len()
    }

    pub fn output_words(&self, output: usize) -> &[u64] {
        &self.outputs[output]
    }

    pub fn get(&self, row: u64, output: usize) -> bool {
        (self.outputs[output][(row / 64) as usize] >> (row % 64)) & 1 == 1
    }

    /// Inputs of row `row`, input 0 first.
    pub fn row_inputs(&self, row: u64) -> Vec<bool> {
        (0..self.n_inputs).map(|i| (row >> i) & 1 == 1).collect()
    }

    /// Column of input `input` for rows `64 * word .. 64 * word + 63`.
    pub fn input_word(&self, input: usize, word: usize) -> u64 {
        if input < 6 {
            LOW_PATTERNS[input] & self.row_mask(word)
        } else if (word >> (input - 6)) & 1 == 1 {
            u64::MAX
        } else {
            0
        }
    }

    /// Mask of the valid rows in `word`.
    pub fn row_mask(&self, word: usize) -> u64 {
        let rows = self.n_rows();
        let start = word as u64 * 64;
        let valid = (rows - start).min(64);
        if valid == 64 {
            u64::MAX
        } else {
            (1u64 << valid) - 1
        }
    }

    /// Text form: `inputs N outputs M` then one `<inputs> <outputs>` line per
    /// row in ascending order, bit 0 rightmost in each group.
    pub fn to_text(&self) -> String {
        let mut out = format!("inputs {} outputs {}\n", self.n_inputs, self.n_outputs);
        for r in 0..self.n_rows() {
            for i in (0..self.n_inputs).rev() {
                out.push(if (r >> i) & 1 == 1 { '1' } else { '0' });
            }
            out.push(' ');
            for j in (0..self.n_outputs).rev() {
                out.push(if self.get(r, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let name = name.into();
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| GpError::parse(1, "empty truth table"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (n_inputs, n_outputs) = match parts.as_slice() {
            ["inputs", n, "outputs", m] => {
                let n: usize = n
                    .parse()
                    .map_err(|_| GpError::parse(hline, format!("bad input count `{n}`")))?;
                let m: usize = m
                    .parse()
                    .map_err(|_| GpError::parse(hline, format!("bad output count `{m}`")))?;
                (n, m)
            }
            _ => {
                return Err(GpError::parse(
                    hline,
                    "expected header `inputs N outputs M`",
                ))
            }
        };
        check_inputs(&name, n_inputs)?;
        if n_inputs == 0 || n_outputs == 0 || n_outputs > 64 {
            return Err(GpError::parse(
                hline,
                "need at least one input and between 1 and 64 outputs",
            ));
        }
        let rows = 1usize << n_inputs;
        let mut seen = vec![false; rows];
        let mut outputs = vec![vec![0u64; Self::word_count(n_inputs)]; n_outputs];
        let parse_bits = |line: usize, s: &str, width: usize, what: &str| -> Result<u64> {
            if s.len() != width {
                return Err(GpError::parse(
                    line,
                    format!("{what} group `{s}` has {} bits, expected {width}", s.len()),
                ));
            }
            s.bytes().try_fold(0u64, |acc, b| match b {
                b'0' => Ok(acc << 1),
                b'1' => Ok((acc << 1) | 1),
                _ => Err(GpError::parse(line, format!("invalid bit `{}` in `{s}`", b as char))),
            })
        };
        for (line, l) in lines {
            let mut fields = l.split(' ');
            let (ins, outs) = match (fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(GpError::parse(
                        line,
                        "expected `<input bits> <output bits>` separated by one space",
                    ))
                }
            };
            let r = parse_bits(line, ins, n_inputs, "input")? as usize;
            let bits = parse_bits(line, outs, n_outputs, "output")?;
            if std::mem::replace(&mut seen[r], true) {
                return Err(GpError::parse(line, format!("duplicate row {ins}")));
            }
            for (j, col) in outputs.iter_mut().enumerate() {
                if (bits >> j) & 1 == 1 {
                    col[r / 64] |= 1 << (r % 64);
                }
            }
        }
        if let Some(r) = seen.iter().position(|s| !s) {
            let assignment: String = (0..n_inputs)
                .rev()
                .map(|i| if (r >> i) & 1 == 1 { '1' } else { '0' })
                .collect();
            let last = text.lines().count();
            return Err(GpError::parse(last, format!("incomplete table: missing row {assignment}")));
        }
        Ok(TruthTable {
            n_inputs,
            n_outputs,
            outputs,
            name,
        })
    }
}

/// Writes the table in text form.
pub fn save_truth_table(table: &TruthTable) -> String {
    table.to_text()
}

pub fn load_truth_table(text: &str) -> Result<TruthTable> {
    TruthTable::from_text("table", text)
}

impl std::fmt::Display for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({} in, {} out)", self.name, self.n_inputs, self.n_outputs)
    }
}
