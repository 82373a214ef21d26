/* evpt — electric powertrain sizing with geometrically scalable motor models.
 *
 * C interface of the shared library. All functions return an evpt_status;
 * results come back through out-parameters. Handles are opaque and must be
 * released with the matching _free function. On failure the thread-local
 * message from evpt_last_error() describes the cause.
 */
#ifndef EVPT_H
#define EVPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EVPT_API __declspec(dllexport)
#else
#define EVPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evpt_status {
    EVPT_OK = 0,
    EVPT_ERROR_IO = 1,               /* file missing or unreadable */
    EVPT_ERROR_PARSE = 2,            /* malformed document */
    EVPT_ERROR_INVALID_ARGUMENT = 3, /* bad argument or null pointer */
    EVPT_ERROR_MALFORMED_CYCLE = 4,  /* drive-cycle invariant violated */
    EVPT_ERROR_MALFORMED_DATA = 5,   /* motor or thermal data invariant violated */
    EVPT_ERROR_INVALID_CONTROL = 6,  /* control input outside its range */
    EVPT_ERROR_INFEASIBLE = 7,       /* operating point outside the envelope */
    EVPT_ERROR_NUMERIC = 8,          /* numerical divergence */
    EVPT_ERROR_CONFIG = 9,           /* run configuration invalid */
    EVPT_ERROR_INTERNAL = 10
} evpt_status;

typedef struct evpt_cycle evpt_cycle;
typedef struct evpt_motor evpt_motor;
typedef struct evpt_config evpt_config;

/* Library version string, static storage. */
EVPT_API const char* evpt_version(void);

/* Symbolic name of a status code, static storage. */
EVPT_API const char* evpt_status_name(evpt_status status);

/* Message of the most recent failure on this thread, empty when none. */
EVPT_API const char* evpt_last_error(void);

/* ---- drive cycles ------------------------------------------------------ */

/* speed_unit: "kmh" or "ms" selects the CSV speed column. */
EVPT_API evpt_status evpt_cycle_load(const char* path, const char* speed_unit,
                                     evpt_cycle** out_cycle);
EVPT_API void evpt_cycle_free(evpt_cycle* cycle);
EVPT_API evpt_status evpt_cycle_sample_count(const evpt_cycle* cycle, size_t* out_count);
EVPT_API evpt_status evpt_cycle_duration_s(const evpt_cycle* cycle, double* out_duration);
EVPT_API evpt_status evpt_cycle_distance_m(const evpt_cycle* cycle, double* out_distance);

/* ---- referent motors and scaling --------------------------------------- */

typedef struct evpt_scaled_params {
    double torque_nm;
    double power_w;
    double inductance_h;
    double flux_linkage_wb;
    double resistance_ohm;
    double current_a;
    double volume_m3;
} evpt_scaled_params;

typedef struct evpt_loss_breakdown {
    double copper_w;
    double iron_w;
    double bearing_w;
    double windage_w;
    double shaft_w;      /* torque * speed */
    double electrical_w; /* shaft power plus all losses */
} evpt_loss_breakdown;

EVPT_API evpt_status evpt_motor_load(const char* path, evpt_motor** out_motor);
EVPT_API void evpt_motor_free(evpt_motor* motor);

/* Technology tag of the loaded motor: "AFM" or "RFM", owned by the handle. */
EVPT_API const char* evpt_motor_tech(const evpt_motor* motor);

EVPT_API evpt_status evpt_motor_scaled_params(const evpt_motor* motor, double radial,
                                              double axial, evpt_scaled_params* out_params);

/* Loss breakdown at an operating point (torque in N*m, speed in rad/s). */
EVPT_API evpt_status evpt_motor_losses(const evpt_motor* motor, double radial, double axial,
                                       double torque_nm, double speed_rad_s,
                                       evpt_loss_breakdown* out_losses);

/* Envelope torque at a shaft speed. */
EVPT_API evpt_status evpt_motor_torque_limit(const evpt_motor* motor, double radial,
                                             double axial, double speed_rad_s,
                                             double* out_torque_nm);

EVPT_API evpt_status evpt_motor_mass_cost(const evpt_motor* motor, double radial, double axial,
                                          double* out_mass_kg, double* out_cost_eur);

/* ---- run configurations and batch execution ---------------------------- */

EVPT_API evpt_status evpt_config_load(const char* path, evpt_config** out_config);
EVPT_API void evpt_config_free(evpt_config* config);

EVPT_API evpt_status evpt_config_set_seed(evpt_config* config, uint64_t seed);
EVPT_API evpt_status evpt_config_set_output_dir(evpt_config* config, const char* dir);

/* Comma-separated topology names (RWD_RFM, AWD_RFM, AWD_AFM) replacing the
 * configured list. */
EVPT_API evpt_status evpt_config_set_topologies(evpt_config* config, const char* names);

/* Optimizes every configured topology and writes the report files into the
 * output directory. out_all_converged (optional) receives 1 when every
 * optimization converged to a feasible design. */
EVPT_API evpt_status evpt_run(const evpt_config* config, int* out_all_converged);

/* Evaluates a scaled-motor quantity over a radial x axial grid and writes a
 * long-format CSV. grid_spec holds a comma list ("0.7,0.85,1.15,1.3") or a
 * range ("0.5:2.0:7"); tech is "AFM" or "RFM". */
EVPT_API evpt_status evpt_sweep(const evpt_config* config, const char* quantity,
                                const char* grid_spec, const char* tech,
                                const char* out_csv_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EVPT_H */
