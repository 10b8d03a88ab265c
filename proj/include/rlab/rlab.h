/* Copyright 2026 The rlab Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the reentrancy lab: simulated chain, dataset generation,
 * cross-validated evaluation and the attack demonstration.
 *
 * Every function returning rlab_status leaves a message for
 * rlab_last_error() on failure. Strings returned through char** are owned by
 * the caller and released with rlab_string_free(). Handles are not
 * thread-safe; use one handle per thread.
 */
#ifndef RLAB_RLAB_H
#define RLAB_RLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RLAB_API __declspec(dllexport)
#else
#define RLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rlab_status {
    RLAB_OK = 0,
    RLAB_ERR_INTERNAL = 1,
    RLAB_ERR_IO = 2,
    RLAB_ERR_INVALID_INPUT = 3,
    RLAB_ERR_DEGENERATE_TRAINING = 4,
    RLAB_ERR_UNKNOWN_ADDRESS = 5,
    RLAB_ERR_UNKNOWN_TRANSACTION = 6,
    RLAB_ERR_GAS_LIMIT = 7,
    RLAB_ERR_OVERFLOW = 8
} rlab_status;

/* Message of the last failure on this thread; never NULL. */
RLAB_API const char* rlab_last_error(void);
RLAB_API void rlab_string_free(char* s);
RLAB_API const char* rlab_version(void);

/* ---- datasets ---------------------------------------------------------- */

typedef struct rlab_dataset rlab_dataset;

typedef struct rlab_gen_config {
    uint64_t seed;
    int randomize_reentries; /* attackers stop after a few re-entries */
    int randomize_depth;     /* benign users pad their call stacks */
    const char* gas_schedule_path; /* NULL: default schedule */
} rlab_gen_config;

RLAB_API void rlab_gen_config_init(rlab_gen_config* config);
RLAB_API rlab_status rlab_dataset_generate(const rlab_gen_config* config, rlab_dataset** out);
RLAB_API rlab_status rlab_dataset_load(const char* path, rlab_dataset** out);
RLAB_API void rlab_dataset_free(rlab_dataset* dataset);

RLAB_API size_t rlab_dataset_size(const rlab_dataset* dataset);
RLAB_API size_t rlab_dataset_count(const rlab_dataset* dataset, int label);
/* Number of curated (catalog) runs; 0 for loaded datasets. */
RLAB_API size_t rlab_dataset_curated(const rlab_dataset* dataset);

RLAB_API rlab_status rlab_dataset_write_csv(const rlab_dataset* dataset, const char* path);
/* Generated datasets only. */
RLAB_API rlab_status rlab_dataset_write_manifest(const rlab_dataset* dataset, const char* path);
/* Dataset without the avg_stack_depth column. */
RLAB_API rlab_status rlab_dataset_write_ablated_csv(const rlab_dataset* dataset, const char* path);

/* Row-major 5x5 Pearson matrix over gas_used, bal_diff_c1, bal_diff_c2,
 * avg_stack_depth, label. defined[i] is 0 where a column is constant. */
RLAB_API rlab_status rlab_dataset_correlation(const rlab_dataset* dataset, double values[25], int defined[25]);
/* svg_path may be NULL. */
RLAB_API rlab_status rlab_dataset_write_correlation(const rlab_dataset* dataset, const char* csv_path,
                                                    const char* svg_path);

/* ---- evaluation -------------------------------------------------------- */

typedef struct rlab_report rlab_report;

typedef struct rlab_eval_config {
    uint64_t seed;
    uint32_t folds;
    uint32_t repetitions;
    const char* models; /* comma separated: rf,nb,lr,knn,svm,svm-poly */
    int ablate_depth;   /* also evaluate without avg_stack_depth */
} rlab_eval_config;

typedef struct rlab_metric_means {
    double accuracy;
    double precision;
    double recall;
    double f1;
    double fpr;
    double fnr;
} rlab_metric_means;

RLAB_API void rlab_eval_config_init(rlab_eval_config* config);
RLAB_API rlab_status rlab_experiment_run(const rlab_dataset* dataset, const rlab_eval_config* config,
                                         rlab_report** out);
RLAB_API void rlab_report_free(rlab_report* report);

RLAB_API size_t rlab_report_result_count(const rlab_report* report);
/* model and mask point into the report and live as long as it does. */
RLAB_API rlab_status rlab_report_result(const rlab_report* report, size_t index, const char** model,
                                        const char** mask, rlab_metric_means* means);
/* mask is "all" or "no-avg_stack_depth". */
RLAB_API rlab_status rlab_report_lookup(const rlab_report* report, const char* model, const char* mask,
                                        rlab_metric_means* means);
RLAB_API rlab_status rlab_report_json(const rlab_report* report, char** out);
/* report.json, metrics.csv and the bar charts, into an existing directory. */
RLAB_API rlab_status rlab_report_write(const rlab_report* report, const char* dir);

/* ---- simulated chain --------------------------------------------------- */

typedef struct rlab_chain rlab_chain;

typedef struct rlab_address {
    uint8_t bytes[20];
} rlab_address;

typedef enum rlab_template {
    RLAB_TEMPLATE_ACCOUNT = 0, /* plain account, no code */
    RLAB_TEMPLATE_VULNERABLE = 1,
    RLAB_TEMPLATE_ROBUST = 2,
    RLAB_TEMPLATE_MALICIOUS = 3,
    RLAB_TEMPLATE_BENIGN = 4
} rlab_template;

typedef struct rlab_deploy_params {
    rlab_template kind;
    const char* endowment_wei; /* decimal; NULL means 0 */
    const char* donation_wei;  /* services; NULL means 1 ether */
    int64_t max_reentries;     /* malicious users; negative means unbounded */
} rlab_deploy_params;

typedef struct rlab_tx {
    rlab_address from;
    rlab_address to;
    const char* function;         /* NULL: plain transfer */
    const rlab_address* argument; /* NULL: none */
    const char* value_wei;        /* NULL means 0 */
    uint64_t gas_limit;
} rlab_tx;

typedef struct rlab_observation {
    uint64_t gas_used;
    double avg_stack_depth;
    char bal_diff_c1[48]; /* signed decimal wei */
    char bal_diff_c2[48];
} rlab_observation;

/* gas_schedule_path may be NULL for the default schedule. */
RLAB_API rlab_status rlab_chain_create(uint64_t seed, const char* gas_schedule_path, rlab_chain** out);
RLAB_API void rlab_chain_free(rlab_chain* chain);
RLAB_API rlab_status rlab_chain_deploy(rlab_chain* chain, const rlab_deploy_params* params, rlab_address* out);
RLAB_API rlab_status rlab_chain_balance(const rlab_chain* chain, const rlab_address* account, char** out_wei);
/* committed is set to 0 for a top-level revert; tx_hash (optional) receives
 * the committed transaction's hash. */
RLAB_API rlab_status rlab_chain_transact(rlab_chain* chain, const rlab_tx* tx, int* committed, char** tx_hash);
RLAB_API rlab_status rlab_chain_receipt_json(const rlab_chain* chain, const char* tx_hash, char** out);
RLAB_API rlab_status rlab_chain_observe(const rlab_chain* chain, const char* tx_hash, const rlab_address* c1,
                                        const rlab_address* c2, rlab_observation* out);

/* ---- attack demonstration ---------------------------------------------- */

typedef struct rlab_demo_summary {
    int attack_donations;
    int counterfactual_donations;
    int benign_donations;
    double attack_depth;
    double benign_depth;
    char victim_before[48];
    char victim_after[48];
    char attacker_gain[48];
    char counterfactual_gain[48];
    char donation[48];
} rlab_demo_summary;

/* reentries < 0: the attacker re-enters until a call fails. text (optional)
 * receives the printable trace dump; summary may be NULL. */
RLAB_API rlab_status rlab_attack_demo(int64_t reentries, char** text, rlab_demo_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* RLAB_RLAB_H */
