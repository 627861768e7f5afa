use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ExtElement, ExtGroup};
use crate::cohom::{coboundary_test, tails_with_section, SystemRecord};
use crate::error::Result;
use crate::gf::VectorGF;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMethod {
    /// Every element of the coset is multiplied out.
    Exhaustive,
    /// `δ(x,x) ∉ im(x+1)`, equivalent to the exhaustive sweep for an involution `x`.
    Linear,
}

/// Orders of the elements of the coset `xM` for an involution `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order4Sweep {
    pub x: String,
    pub method: SweepMethod,
    /// `p^dim M` as a decimal string.
    pub elements: String,
    /// Distinct orders found (exhaustive method only).
    pub orders: Vec<u64>,
    pub random_samples: usize,
    pub all_order_four: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonsplitCertificate {
    pub system: SystemRecord,
    /// Generator values of a complement, when one exists.
    pub complement: Option<Vec<String>>,
    pub order4_sweep: Option<Order4Sweep>,
    pub nonsplit: bool,
}

/// Runs the complement system on `δ` and, for `p = 2`, the order sweep over
/// the coset of `(1 2)(3 4)`; the sweep is exhaustive when `2^dim M ≤ sweep_cap`.
pub fn nonsplit_certificate(h: &ExtGroup, sweep_cap: u64, rng: &mut impl Rng) -> Result<NonsplitCertificate> {
    let sys = coboundary_test(h.cocycle().as_ref())?;
    let complement = match &sys.solution {
        Some(c) => {
            debug_assert!(tails_with_section(h.cocycle().as_ref(), c)?.iter().all(|t| t.is_zero()));
            Some(c.iter().map(|v| v.to_digit_string()).collect())
        }
        None => None,
    };
    let module = h.module();
    let order4_sweep = if module.field().p() == 2 && h.degree() >= 4 {
        let x = Permutation::from_cycles(h.degree(), &[&[0, 1], &[2, 3]])?;
        Some(order_four_sweep(h, &x, sweep_cap, rng)?)
    } else {
        None
    };
    let nonsplit = sys.solution.is_none() && order4_sweep.as_ref().is_none_or(|s| s.all_order_four);
    Ok(NonsplitCertificate {
        system: sys.record(),
        complement,
        order4_sweep,
        nonsplit,
    })
}

pub fn order_four_sweep(h: &ExtGroup, x: &Permutation, sweep_cap: u64, rng: &mut impl Rng) -> Result<Order4Sweep> {
    let module = h.module();
    let p = module.field().p();
    let d = module.dim();
    let elements = num_bigint::BigUint::from(p).pow(d as u32).to_string();
    let samples = 200;
    let mut random_ok = true;
    for _ in 0..samples {
        let xs: Vec<u8> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        let e = ExtElement {
            m: VectorGF::from_elems(module.field(), &xs),
            g: x.clone(),
        };
        random_ok &= h.element_order(&e)? == 4;
    }
    let exhaustive = (p as u64).checked_pow(d as u32).is_some_and(|c| c <= sweep_cap);
    let (method, orders, swept) = if exhaustive {
        let orders = h.sweep_coset_orders(x, sweep_cap)?;
        let ok = orders == [4];
        (SweepMethod::Exhaustive, orders, ok)
    } else {
        (SweepMethod::Linear, Vec::new(), h.coset_squares_nonzero(x)?)
    };
    Ok(Order4Sweep {
        x: x.to_cycle_string(),
        method,
        elements,
        orders,
        random_samples: samples,
        all_order_four: random_ok && swept,
    })
}
