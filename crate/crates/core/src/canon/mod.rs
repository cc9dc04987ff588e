//! Indecomposable inventories, the parametrization `Δ_ν` of canonical basis
//! elements, stratum data, and the weight-dimension oracle.

mod delta;
mod inventory;
mod strata;

pub use delta::{
    count_aperiodic_cyclic, enumerate_delta, is_aperiodic_sigma, partitions, weight_dim_oracle,
    CanonicalParam,
};
pub use inventory::{build_inventory, Inventory, InventoryItem, Label};
pub use strata::{generic_rep_of_stratum, locate, stratum_dim, StratumPoint};
