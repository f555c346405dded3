//! Enumeration split over scoped worker threads.

use cwe_core::codebuild::{
    defining_set, lift_bar, CodeSpec, CompleteWeightEnumerator, Enumerator, Variant,
};
use cwe_core::FieldContext;

/// Plain enumerator of `spec`'s defining set with `F_q` cut into `threads`
/// contiguous index ranges. Partial results merge associatively, so the
/// output does not depend on `threads`.
pub fn enumerate_plain(ctx: &FieldContext, spec: &CodeSpec, threads: usize) -> CompleteWeightEnumerator {
    let set = defining_set(ctx, spec.alpha, spec.a);
    let en = Enumerator::new(ctx, &set);
    let q = ctx.q();
    let threads = threads.clamp(1, q as usize) as u32;
    if threads == 1 {
        return en.enumerate_range(0..q);
    }
    let chunk = q.div_ceil(threads);
    let partials: Vec<CompleteWeightEnumerator> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let en = &en;
                let lo = (t * chunk).min(q);
                let hi = ((t + 1) * chunk).min(q);
                s.spawn(move || en.enumerate_range(lo..hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    let mut out = en.enumerate_range(0..0);
    for part in &partials {
        out.merge(part);
    }
    out
}

pub fn enumerate(ctx: &FieldContext, spec: &CodeSpec, threads: usize) -> CompleteWeightEnumerator {
    let plain = enumerate_plain(ctx, spec, threads);
    match spec.variant {
        Variant::Plain => plain,
        Variant::Bar => lift_bar(&plain),
    }
}
