use crate::error::{GpError, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Sample<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
}

/// Supervised regression data: finite, dimensionally consistent, non-empty.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset<T> {
    n_inputs: usize,
    n_outputs: usize,
    rows: Vec<Sample<T>>,
    pub name: String,
}

impl<T: Scalar> Dataset<T> {
    pub fn new(name: impl Into<String>, n_inputs: usize, n_outputs: usize, rows: Vec<Sample<T>>) -> Result<Self> {
        let name = name.into();
        if rows.is_empty() {
            return Err(GpError::config(format!("dataset `{name}` has no rows")));
        }
        if n_outputs == 0 {
            return Err(GpError::config(format!("dataset `{name}` has no outputs")));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.x.len() != n_inputs || r.y.len() != n_outputs {
                return Err(GpError::config(format!(
                    "dataset `{name}` row {i} has shape {}→{}, expected {n_inputs}→{n_outputs}",
                    r.x.len(),
                    r.y.len()
                )));
            }
            if r.x.iter().chain(&r.y).any(|v| !v.is_finite()) {
                return Err(GpError::config(format!("dataset `{name}` row {i} has a non-finite value")));
            }
        }
        Ok(Dataset {
            n_inputs,
            n_outputs,
            rows,
            name,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn rows(&self) -> &[Sample<T>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV with header `x0,...,x{n-1},y0,...,y{m-1}`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<String> = (0..self.n_inputs)
            .map(|i| format!("x{i}"))
            .chain((0..self.n_outputs).map(|j| format!("y{j}")))
            .collect();
        w.write_record(&header)?;
        for r in &self.rows {
            w.write_record(r.x.iter().chain(&r.y).map(|v| v.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| GpError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn from_csv(name: impl Into<String>, text: &str) -> Result<Self> {
        let name = name.into();
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = rdr.headers()?.clone();
        let n_inputs = header.iter().take_while(|h| h.starts_with('x')).count();
        let n_outputs = header.len() - n_inputs;
        for (i, h) in header.iter().enumerate() {
            let expected = if i < n_inputs {
                format!("x{i}")
            } else {
                format!("y{}", i - n_inputs)
            };
            if h != expected {
                return Err(GpError::parse(1, format!("header column {i} is `{h}`, expected `{expected}`")));
            }
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| GpError::parse(line, e.to_string()))?;
            let mut values = Vec::with_capacity(rec.len());
            for field in rec.iter() {
                let v: T = field
                    .parse()
                    .map_err(|_| GpError::parse(line, format!("`{field}` is not a number")))?;
                values.push(v);
            }
            let y = values.split_off(n_inputs);
            rows.push(Sample { x: values, y });
        }
        Dataset::new(name, n_inputs, n_outputs, rows)
    }
}
