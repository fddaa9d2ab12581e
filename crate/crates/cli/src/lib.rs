//! Pipelines behind the `wf2pt` binary: the rediscovery experiment
//! (generate, translate, reduce, compare) and the runtime benchmark with its
//! quadratic least-squares fit.

pub mod fit;
pub mod pipeline;
