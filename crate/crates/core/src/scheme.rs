//! Textual code and scheme specifications used by the command line.
//!
//! A code spec is `cat:<p>`, `rotcat:<p>` or `file:<path.json>`. A scheme is
//! one or more code specs joined by `+`, innermost first, e.g.
//! `rotcat:5+cat:5`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::capacity::CapacityResult;
use crate::cat::{cat_code, cat_qss, rotated_cat_code};
use crate::channel::PauliChannel;
use crate::code::StabilizerCode;
use crate::concat::concatenated_qss_with_channel;
use crate::error::{Error, Result};
use crate::pauli::MAX_QUBITS;

#[derive(Debug, Clone, PartialEq)]
pub enum CodeSpec {
    Cat(usize),
    RotatedCat(usize),
    File(PathBuf, StabilizerCode),
}

impl CodeSpec {
    pub fn block_size(&self) -> usize {
        match self {
            CodeSpec::Cat(p) | CodeSpec::RotatedCat(p) => *p,
            CodeSpec::File(_, code) => code.n(),
        }
    }

    pub fn build(&self) -> Result<StabilizerCode> {
        match self {
            CodeSpec::Cat(p) => cat_code(*p),
            CodeSpec::RotatedCat(p) => rotated_cat_code(*p),
            CodeSpec::File(_, code) => Ok(code.clone()),
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Cat(p) => write!(f, "cat:{p}"),
            CodeSpec::RotatedCat(p) => write!(f, "rotcat:{p}"),
            CodeSpec::File(path, _) => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::CodeDescription(format!("{s:?}: {why}"));
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| bad("expected cat:<p>, rotcat:<p> or file:<path>"))?;
        let size = || -> Result<usize> {
            let p: usize = arg
                .parse()
                .map_err(|_| bad("block size must be a positive integer"))?;
            if p == 0 {
                return Err(Error::BlockSize(p));
            }
            Ok(p)
        };
        match kind {
            "cat" => Ok(CodeSpec::Cat(size()?)),
            "rotcat" => {
                let p = size()?;
                if p > MAX_QUBITS {
                    return Err(Error::BlockSize(p));
                }
                Ok(CodeSpec::RotatedCat(p))
            }
            "file" => {
                let path = PathBuf::from(arg);
                let code = StabilizerCode::from_json_file(&path)?;
                Ok(CodeSpec::File(path, code))
            }
            _ => Err(bad("unknown code kind")),
        }
    }
}

/// Nested codes, innermost first.
#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    levels: Vec<CodeSpec>,
}

impl Scheme {
    pub fn new(levels: Vec<CodeSpec>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyLevels);
        }
        Ok(Self { levels })
    }

    pub fn levels(&self) -> &[CodeSpec] {
        &self.levels
    }

    pub fn qubits(&self) -> usize {
        self.levels.iter().map(CodeSpec::block_size).product()
    }

    /// Capacity under `channel`. A lone cat or rotated cat level under a
    /// depolarizing channel uses the closed form, which has no size cap.
    pub fn capacity(&self, channel: PauliChannel) -> Result<CapacityResult> {
        if let [CodeSpec::Cat(p) | CodeSpec::RotatedCat(p)] = self.levels.as_slice() {
            let [f, x, y, z] = channel.probs();
            let g = (1.0 - f) / 3.0;
            if [x, y, z].iter().all(|v| (v - g).abs() <= 1e-15) {
                return cat_qss(*p, f);
            }
        }
        let codes = self
            .levels
            .iter()
            .map(CodeSpec::build)
            .collect::<Result<Vec<_>>>()?;
        concatenated_qss_with_channel(&codes, channel)
    }

    pub fn depolarizing_capacity(&self, f: f64) -> Result<f64> {
        Ok(self.capacity(PauliChannel::depolarizing(f)?)?.q_ss)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.levels.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.split('+').map(str::parse).collect::<Result<Vec<_>>>()?)
    }
}
