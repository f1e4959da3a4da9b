//! Canonical representatives of classes in W(k)/I_a.
//!
//! Since I_a is the kernel of multiplication by `<1> - <a>`, the product `c (<1> - <a>)` is a
//! complete invariant of the coset of `c`. The stored representative is a deterministic
//! function of that product.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::quad_ext::QuadExtContext;
use crate::witt::WittClass;

type Cache = Mutex<HashMap<(QuadExtContext, WittClass), WittClass>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The product `c (<1> - <a>)` identifying the coset of `c`.
pub fn coset_key(ctx: &QuadExtContext, c: &WittClass) -> WittClass {
    c.mul(&ctx.one_minus_a()).expect("coefficient over the base field")
}

/// Canonical representative of `c + I_a`.
pub fn canonical_coset(ctx: &QuadExtContext, c: &WittClass) -> WittClass {
    let key = coset_key(ctx, c);
    if key.is_canonical_zero() {
        return WittClass::zero(ctx.base());
    }
    if let Some(hit) = cache().lock().unwrap().get(&(ctx.clone(), key.clone())) {
        return hit.clone();
    }
    // The multiplier search depends only on the key, so its answer is canonical. If it fails
    // the given representative is kept; equality still goes through `coset_eq`.
    let rep = ctx.certify_multiple(&key).unwrap_or_else(|_| c.clone());
    cache().lock().unwrap().insert((ctx.clone(), key), rep.clone());
    rep
}

pub fn coset_eq(ctx: &QuadExtContext, c: &WittClass, d: &WittClass) -> bool {
    coset_key(ctx, c) == coset_key(ctx, d)
}
