//! Construction and verification of high-dimensional expanders built from
//! Chevalley groups.
//!
//! The pipeline: a root system ([`rootsys`]) and a finite field ([`gf`])
//! determine a family of graded unipotent subgroups, computed either
//! symbolically through the Steinberg presentation ([`steinberg`]) or as
//! explicit matrix groups ([`matgroups`]). Cosets of those subgroups assemble
//! into a pure, partite simplicial complex ([`complex`]) whose link expansion
//! is measured and certified ([`spectra`]). The two exotic `G2` link graphs
//! that fall outside the certificate get their own laboratory ([`g2lab`]).

pub mod complex;
pub mod error;
pub mod g2lab;
pub mod gf;
pub mod matgroups;
pub mod rootsys;
pub mod spectra;
pub mod steinberg;

pub use error::{Error, Result};
