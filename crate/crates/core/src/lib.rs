pub mod bngroup;
pub mod combinat;
pub mod coxeter;
pub mod exactfield;
pub mod hecke;
pub mod modrep;
pub mod refdata;
pub mod suite;
