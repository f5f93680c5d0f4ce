//! Based chain complexes over a skew field and their torsion invariants:
//! validation and homology ranks, two torsion conventions (base-change and
//! split), multiplicativity over short exact sequences, cell data over the
//! group ring, and seeded random instance generators.

mod complex;
mod cw;
mod generate;
mod ses;
mod torsion;

pub use complex::{BasedChainComplex, ComplexReport, HomologyBasis};
pub use cw::{reidemeister_torsion, CwDatum};
pub use generate::{
    mix_homology, random_complex, random_ses, ratfun_samplers, series_samplers,
    shifted_cone_ses, ComplexProfile, FieldSamplers, GenRng,
};
pub use ses::{multiplicativity_check, MultiplicativityReport, ShortExactData};
pub use torsion::{torsion_milnor, torsion_turaev, MilnorOptions, SplitData};
