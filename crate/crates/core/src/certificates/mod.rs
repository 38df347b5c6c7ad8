//! Exact non-triviality certificates for continuous cohomology of linear
//! Alexander quandles: a cycle `w` with `dw = 0` and a cocycle whose value
//! on `w` is non-zero.

pub mod chain;
pub mod linear;
pub mod module_example;
pub mod sylvester;

pub use chain::{boundary2_twisted, pairing, ChainPoint, FormalChain, LinearQuandle};
pub use linear::{certify_appendix, certify_linear, LinearMode};
pub use module_example::{certify_module_example, ModulePoint};
pub use sylvester::sylvester_h1;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::rational::{qvec_to_json, QVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NonTrivial,
    Inconclusive,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
    /// Hypotheses; a failing one rejects the certificate.
    #[serde(skip)]
    pub required: bool,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub inputs: Value,
    pub identities: Vec<Identity>,
    pub chain: Value,
    pub boundary: Value,
    pub boundary_is_zero: bool,
    pub pairing: QVec,
    pub verdict: Verdict,
}

impl Certificate {
    /// Verdict: rejected if a hypothesis fails or `dw != 0`, inconclusive
    /// if the pairing vanishes, non-trivial otherwise.
    pub(crate) fn assemble(
        inputs: Value,
        mut identities: Vec<Identity>,
        chain: Value,
        boundary: Value,
        boundary_is_zero: bool,
        pairing: QVec,
    ) -> Self {
        identities.push(Identity { name: "boundary of w is zero".into(), holds: boundary_is_zero, required: true });
        let pairing_nonzero = pairing.iter().any(|x| !num_traits::Zero::is_zero(x));
        identities.push(Identity { name: "pairing is non-zero".into(), holds: pairing_nonzero, required: false });
        let verdict = if identities.iter().any(|i| i.required && !i.holds) {
            Verdict::Rejected
        } else if pairing_nonzero {
            Verdict::NonTrivial
        } else {
            Verdict::Inconclusive
        };
        Certificate { inputs, identities, chain, boundary, boundary_is_zero, pairing, verdict }
    }

    pub fn failing_identities(&self) -> Vec<&str> {
        self.identities.iter().filter(|i| !i.holds).map(|i| i.name.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "inputs": self.inputs,
            "identities": self.identities,
            "chain": self.chain,
            "boundary": self.boundary,
            "pairing": qvec_to_json(&self.pairing),
            "verdict": self.verdict,
        })
    }
}

pub(crate) fn identity(name: impl Into<String>, holds: bool) -> Identity {
    Identity { name: name.into(), holds, required: true }
}

pub(crate) fn observation(name: impl Into<String>, holds: bool) -> Identity {
    Identity { name: name.into(), holds, required: false }
}
