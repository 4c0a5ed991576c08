//! Finite-model workbench for frames, sublocales and bilocales.

pub mod atlas;
pub mod baire;
pub mod bilocale;
pub mod bispace;
pub mod error;
pub mod frame;
pub mod ideal;
pub mod io;
pub mod maps;
pub mod generate;
pub mod par;
pub mod replay;
pub mod set;
pub mod sublocale;
pub mod topo;

pub use baire::{BaireVerdict, CategoryKind, CategoryVerdict, PseudoMode};
pub use atlas::{Atlas, CorpusSpec, Generator, SearchSpec, Separation, Target};
pub use bilocale::{Bilocale, Orientation, RawBilocale, Side, Subbilocale};
pub use error::{Error, Result};
pub use frame::{Elem, Frame, Guards, RawFrame};
pub use io::{Instance, InstanceKind};
pub use par::Execution;
pub use set::ElemSet;
pub use sublocale::{Sublocale, SublocaleLattice};
pub use replay::{PropositionReport, Status};
