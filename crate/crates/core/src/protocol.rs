//! The protocol registry: names, wire ids, arity, input domains, declared
//! round counts and dispatch.

use std::fmt;
use std::str::FromStr;

use crate::activations;
use crate::error::{Error, Result};
use crate::primitives::{self, rounds, SharedMatrix};
use crate::runtime::{Party, ProtocolConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Protocol {
    TaylorExp,
    Exp,
    Sigmoid,
    DSigmoid,
    Tanh,
    DTanh,
    Softmax,
    Division,
    MatMul,
}

impl Protocol {
    pub const ALL: [Protocol; 9] = [
        Protocol::TaylorExp,
        Protocol::Exp,
        Protocol::Sigmoid,
        Protocol::DSigmoid,
        Protocol::Tanh,
        Protocol::DTanh,
        Protocol::Softmax,
        Protocol::Division,
        Protocol::MatMul,
    ];

    /// The protocols of the reference benchmark table, in its row order.
    pub const TABLE: [Protocol; 7] = [
        Protocol::Exp,
        Protocol::Sigmoid,
        Protocol::Tanh,
        Protocol::Softmax,
        Protocol::DSigmoid,
        Protocol::DTanh,
        Protocol::TaylorExp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::TaylorExp => "taylorExp",
            Protocol::Exp => "exp",
            Protocol::Sigmoid => "sigmoid",
            Protocol::DSigmoid => "d_sigmoid",
            Protocol::Tanh => "tanh",
            Protocol::DTanh => "d_tanh",
            Protocol::Softmax => "softmax",
            Protocol::Division => "division",
            Protocol::MatMul => "mat_mul",
        }
    }

    /// Case-insensitive; also accepts `taylor5`, `taylor_exp`, `matmul`,
    /// `dsigmoid` and `dtanh`.
    pub fn from_name(name: &str) -> Result<Protocol> {
        let lower = name.to_ascii_lowercase().replace('-', "_");
        let p = match lower.as_str() {
            "taylorexp" | "taylor_exp" | "taylor5" => Protocol::TaylorExp,
            "exp" => Protocol::Exp,
            "sigmoid" => Protocol::Sigmoid,
            "d_sigmoid" | "dsigmoid" => Protocol::DSigmoid,
            "tanh" => Protocol::Tanh,
            "d_tanh" | "dtanh" => Protocol::DTanh,
            "softmax" => Protocol::Softmax,
            "division" | "div" => Protocol::Division,
            "mat_mul" | "matmul" => Protocol::MatMul,
            _ => {
                let known: Vec<&str> = Protocol::ALL.iter().map(|p| p.name()).collect();
                return Err(Error::Usage(format!(
                    "unknown protocol '{name}', expected one of {}",
                    known.join(", ")
                )));
            }
        };
        Ok(p)
    }

    /// Identifier carried in the networked handshake.
    pub fn id(self) -> u8 {
        Protocol::ALL.iter().position(|&p| p == self).expect("listed") as u8 + 1
    }

    pub fn from_id(id: u8) -> Result<Protocol> {
        Protocol::ALL
            .get((id as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Usage(format!("unknown protocol id {id}")))
    }

    /// Number of input matrices: `x / y` and `X * Y` take two.
    pub fn arity(self) -> usize {
        match self {
            Protocol::Division | Protocol::MatMul => 2,
            _ => 1,
        }
    }

    /// Shapes of the inputs for a `rows x cols` session. The second matrix
    /// product operand is square, `cols x cols`.
    pub fn input_shapes(self, rows: usize, cols: usize) -> Vec<(usize, usize)> {
        match self {
            Protocol::MatMul => vec![(rows, cols), (cols, cols)],
            Protocol::Division => vec![(rows, cols), (rows, cols)],
            _ => vec![(rows, cols)],
        }
    }

    /// Half-open interval of real inputs (per operand) on which the protocol
    /// is specified under `config`, for a row length of `cols`.
    pub fn input_domain(self, config: &ProtocolConfig, cols: usize) -> Vec<(f64, f64)> {
        match self {
            Protocol::TaylorExp => vec![(0.0, 1.0)],
            Protocol::Exp => vec![(0.0, config.exp_domain())],
            Protocol::Sigmoid | Protocol::DSigmoid => vec![(0.0, config.sigmoid_domain())],
            Protocol::Tanh | Protocol::DTanh => vec![(0.0, config.tanh_domain())],
            Protocol::Softmax => vec![(0.0, config.softmax_domain(cols))],
            // x < 8 and y >= 0.5 keep every quotient below 16
            Protocol::Division => vec![(0.0, 8.0), (0.5, 8.0)],
            Protocol::MatMul => vec![(-4.0, 4.0), (-4.0, 4.0)],
        }
    }

    /// Online rounds between P0 and P1 for one run.
    pub fn declared_rounds(self, config: &ProtocolConfig) -> u64 {
        match self {
            Protocol::TaylorExp => rounds::taylor_exp(),
            Protocol::Exp => rounds::exp(config),
            Protocol::Sigmoid | Protocol::Tanh => rounds::sigmoid(config),
            Protocol::DSigmoid | Protocol::DTanh => rounds::d_sigmoid(config),
            Protocol::Softmax => rounds::exp(config) + rounds::division(config),
            Protocol::Division => rounds::division(config),
            Protocol::MatMul => rounds::MUL,
        }
    }

    /// Time (s) and communication (MB) from the reference benchmark table
    /// for `rows x cols`, when listed there.
    pub fn reference(self, rows: usize, cols: usize) -> Option<(f64, f64)> {
        let preset = match (rows, cols) {
            (64, 16) => 0,
            (128, 128) => 1,
            (576, 20) => 2,
            _ => return None,
        };
        let table: [(f64, f64); 3] = match self {
            Protocol::Exp => [(0.08, 0.025), (2.134, 0.393), (0.882, 0.276)],
            Protocol::Sigmoid => [(0.252, 2.58), (5.631, 41.288), (2.615, 29.03)],
            Protocol::Tanh => [(0.275, 2.58), (5.32, 41.288), (2.613, 29.03)],
            Protocol::Softmax => [(0.324, 2.58), (5.438, 41.288), (2.617, 29.03)],
            Protocol::DSigmoid => [(0.464, 2.597), (8.033, 41.55), (4.121, 29.214)],
            Protocol::DTanh => [(0.383, 2.58), (4.465, 41.288), (2.84, 29.03)],
            Protocol::TaylorExp => [(0.032, 0.005), (0.092, 0.079), (0.427, 0.055)],
            Protocol::Division | Protocol::MatMul => return None,
        };
        Some(table[preset])
    }

    /// Runs the protocol on this party's input shares and checks that the
    /// number of online rounds matches [`Protocol::declared_rounds`].
    pub fn run(self, party: &mut Party, inputs: &[SharedMatrix]) -> Result<SharedMatrix> {
        if inputs.len() != self.arity() {
            return Err(Error::Usage(format!(
                "{self} takes {} input(s), got {}",
                self.arity(),
                inputs.len()
            )));
        }
        let before = party.rounds();
        let x = &inputs[0];
        let out = match self {
            Protocol::TaylorExp => activations::taylor_exp(party, x)?,
            Protocol::Exp => activations::exp(party, x)?,
            Protocol::Sigmoid => activations::sigmoid(party, x)?,
            Protocol::DSigmoid => activations::d_sigmoid(party, x)?,
            Protocol::Tanh => activations::tanh(party, x)?,
            Protocol::DTanh => activations::d_tanh(party, x)?,
            Protocol::Softmax => activations::softmax(party, x)?,
            Protocol::Division => primitives::division(party, x, &inputs[1])?,
            Protocol::MatMul => primitives::mat_mul(party, x, &inputs[1])?,
        };
        let used = party.rounds() - before;
        let declared = self.declared_rounds(party.config());
        if !party.is_helper() && used != declared {
            return Err(Error::Protocol(format!(
                "{self} used {used} rounds, declared {declared}"
            )));
        }
        Ok(out)
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Protocol::from_name(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_ids_round_trip() {
        for p in Protocol::ALL {
            assert_eq!(Protocol::from_name(p.name()).unwrap(), p);
            assert_eq!(Protocol::from_id(p.id()).unwrap(), p);
        }
        assert_eq!(Protocol::from_name("TaylorExp").unwrap(), Protocol::TaylorExp);
        assert!(matches!(Protocol::from_name("relu"), Err(Error::Usage(_))));
        assert!(Protocol::from_id(0).is_err());
        assert!(Protocol::from_id(10).is_err());
    }

    #[test]
    fn reference_values() {
        assert_eq!(Protocol::TaylorExp.reference(64, 16), Some((0.032, 0.005)));
        assert_eq!(Protocol::Sigmoid.reference(128, 128), Some((5.631, 41.288)));
        assert_eq!(Protocol::Exp.reference(10, 10), None);
    }

    #[test]
    fn composite_rounds() {
        let c = ProtocolConfig::default();
        assert_eq!(
            Protocol::Sigmoid.declared_rounds(&c),
            Protocol::Exp.declared_rounds(&c) + Protocol::Division.declared_rounds(&c)
        );
        assert_eq!(Protocol::DTanh.declared_rounds(&c), Protocol::Sigmoid.declared_rounds(&c) + 1);
    }
}
