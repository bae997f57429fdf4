#ifndef REULEAUX_H
#define REULEAUX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; 2 to 5 match the command-line exit codes.
 */
typedef enum RxStatus {
  RX_STATUS_OK = 0,
  /**
   * Invalid input, failed validation or malformed JSON.
   */
  RX_STATUS_VALIDATION = 2,
  /**
   * Degenerate geometry, unexpected structure or a mesh failure.
   */
  RX_STATUS_STRUCTURE = 3,
  /**
   * Numeric domain or parameter range error.
   */
  RX_STATUS_DOMAIN = 4,
  RX_STATUS_IO = 5,
  RX_STATUS_NULL_POINTER = 10,
  /**
   * Index past the end of a table or a buffer too small for a copy.
   */
  RX_STATUS_OUT_OF_BOUNDS = 11,
  RX_STATUS_PANIC = 12,
} RxStatus;

typedef enum RxBody {
  RX_BODY_REULEAUX = 0,
  RX_BODY_MEISSNER = 1,
  /**
   * Region removed by one surgery; selects a dual pair by index.
   */
  RX_BODY_WEDGE = 2,
} RxBody;

typedef enum RxFormula {
  RX_FORMULA_F = 0,
  RX_FORMULA_G = 1,
  RX_FORMULA_H = 2,
  RX_FORMULA_H_MINUS_G = 3,
  RX_FORMULA_WEDGE_VOLUME = 4,
  RX_FORMULA_WEDGE_VOLUME_VIA_FLUX = 5,
  RX_FORMULA_SLIVER_AREA = 6,
  RX_FORMULA_SPINDLE_AREA = 7,
  RX_FORMULA_SLIVER_FLUX = 8,
  RX_FORMULA_SPINDLE_FLUX = 9,
  RX_FORMULA_PHI = 10,
  RX_FORMULA_PHI_PRIME = 11,
} RxFormula;

typedef struct RxMesh RxMesh;

/**
 * Validated extremal configuration with its edges and dual pairs.
 */
typedef struct RxStructure RxStructure;

typedef struct RxCounts {
  size_t points;
  size_t diametric_pairs;
  size_t edges;
  size_t faces;
  size_t dual_pairs;
  size_t dangling_vertices;
  int64_t euler_characteristic;
} RxCounts;

typedef struct RxPairAngles {
  double theta;
  double theta_prime;
  double phi;
  double phi_prime;
} RxPairAngles;

typedef struct RxScalars {
  double volume;
  double surface_area;
} RxScalars;

typedef struct RxMcEstimate {
  double volume_mean;
  double std_error;
  uint64_t hit_count;
  uint64_t sample_count;
  double bbox_volume;
} RxMcEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build from a built-in generator name (`"tetra"` or `"pentad"`).
 *
 * # Safety
 * `name` must be a valid C string and `out` a valid pointer.
 */
enum RxStatus rx_structure_from_generator(const char *name,
                                          double dist_eps,
                                          struct RxStructure **out);

/**
 * Build from point-set JSON text (`{"points": [[x, y, z], ...]}`).
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum RxStatus rx_structure_from_json(const char *json, double dist_eps, struct RxStructure **out);

/**
 * Build from `count` points stored as packed `x, y, z` triples.
 *
 * # Safety
 * `xyz` must point to `3 * count` doubles and `out` must be valid.
 */
enum RxStatus rx_structure_from_points(const double *xyz,
                                       size_t count,
                                       double dist_eps,
                                       struct RxStructure **out);

/**
 * # Safety
 * `s` must be null or a handle from an `rx_structure_from_*` call, freed once.
 */
void rx_structure_free(struct RxStructure *s);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RxStatus rx_structure_counts(const struct RxStructure *s, struct RxCounts *out_counts);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RxStatus rx_structure_pair_angles(const struct RxStructure *s,
                                       size_t index,
                                       struct RxPairAngles *out_angles);

/**
 * Closed-form volume and surface area of the Reuleaux or Meissner body;
 * for `Wedge` only `volume` is meaningful and `surface_area` is NaN.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RxStatus rx_structure_scalars(const struct RxStructure *s,
                                   enum RxBody body,
                                   size_t wedge_index,
                                   struct RxScalars *out_scalars);

/**
 * `½S − π/3 − V` for the Reuleaux body.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RxStatus rx_structure_blaschke_gap(const struct RxStructure *s, double *out_gap);

/**
 * Seeded Monte Carlo volume estimate; identical for any thread count.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RxStatus rx_mc_volume(const struct RxStructure *s,
                           enum RxBody body,
                           size_t wedge_index,
                           uint64_t seed,
                           uint64_t samples,
                           struct RxMcEstimate *out_estimate);

/**
 * Watertight outward mesh of the Reuleaux or Meissner body.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RxStatus rx_mesh_build(const struct RxStructure *s,
                            enum RxBody body,
                            size_t refine,
                            struct RxMesh **out_mesh);

/**
 * # Safety
 * `m` must be null or a handle from [`rx_mesh_build`], freed once.
 */
void rx_mesh_free(struct RxMesh *m);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RxStatus rx_mesh_counts(const struct RxMesh *m, size_t *out_vertices, size_t *out_triangles);

/**
 * Divergence-theorem volume and total area.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RxStatus rx_mesh_scalars(const struct RxMesh *m, struct RxScalars *out_scalars);

/**
 * Copy vertices as packed `x, y, z` into `buf`, which holds `len` doubles.
 *
 * # Safety
 * `buf` must be valid for `len` writes.
 */
enum RxStatus rx_mesh_copy_vertices(const struct RxMesh *m, double *buf, size_t len);

/**
 * Copy zero-based triangle indices into `buf`, which holds `len` values.
 *
 * # Safety
 * `buf` must be valid for `len` writes.
 */
enum RxStatus rx_mesh_copy_triangles(const struct RxMesh *m, uint32_t *buf, size_t len);

/**
 * Write the mesh to `path`; `format` is `"obj"` or `"ply"`.
 *
 * # Safety
 * Pointers must be valid C strings or handles.
 */
enum RxStatus rx_mesh_export(const struct RxMesh *m, const char *path, const char *format);

/**
 * Evaluate one closed-form function of a dual-pair angle pair.
 *
 * # Safety
 * `out_value` must be valid.
 */
enum RxStatus rx_formula(enum RxFormula formula,
                         double theta,
                         double theta_prime,
                         double *out_value);

/**
 * Copy of the calling thread's last error message, or null if none.
 * Free with [`rx_string_free`].
 */
char *rx_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void rx_string_free(char *s);

/**
 * Library version as a static C string.
 */
const char *rx_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REULEAUX_H */
