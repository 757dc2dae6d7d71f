//! Surface meshes: topology, the proxy contact surface, OBJ I/O and the
//! multi-level downsampling regressors.

mod obj;
mod proxy;
mod regressor;
mod topology;

pub use obj::{read_obj, read_obj_file, write_obj, TriangleMesh};
pub use proxy::{
    make_proxy_mesh, proxy_vertex_count, subdivisions_for_vertex_count, ProxyMesh, REGION_RADIUS,
};
pub use regressor::{
    build_level_regressors, default_level_sizes, project_levels, LevelRegressor, SparseRowMatrix,
    MANO_LEVEL_SIZES,
};
pub use topology::{build_topology, MeshTopology};

pub type Point3 = nalgebra::Point3<f64>;
pub type Vector3 = nalgebra::Vector3<f64>;
