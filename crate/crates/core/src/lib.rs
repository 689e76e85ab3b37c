//! Lexical coverage of a corpus against DELAF dictionaries.
//!
//! The pipeline: parse DELAF files ([`delaf`]), compile them into a
//! minimal automaton ([`lexicon`]), normalize and tokenize text
//! ([`preprocess`]), split tokens into known and unknown ([`dico`]),
//! measure coverage ([`coverage`]) and sort the unknowns into rough
//! categories ([`classify`]).

pub mod casing;
pub mod classify;
pub mod coverage;
pub mod delaf;
pub mod dico;
pub mod lexicon;
pub mod preprocess;

pub use delaf::{load_dict_file, DictEntry, DictFile, RoleTag};
pub use dico::{apply_dictionaries, DicoResult};
pub use lexicon::{compile, CaseFoldPolicy, Lexicon};
pub use preprocess::{preprocess, PreprocessConfig, TokenStream};
