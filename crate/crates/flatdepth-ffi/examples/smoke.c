/* Minimal round trip through the C API: solve, inspect, serialize, verify.
 *
 * Build from the repository root after `cargo build --release -p flatdepth-ffi`:
 *
 *   cc -std=c99 -Wall -Wextra -I crates/flatdepth-ffi/include \
 *      crates/flatdepth-ffi/examples/smoke.c \
 *      -L target/release -l flatdepth_ffi -o smoke
 *   LD_LIBRARY_PATH=target/release ./smoke
 */

#include <assert.h>
#include <stdio.h>
#include <string.h>
#include "flatdepth.h"

int main(void) {
    const char *instance =
        "{\"dimension\": 2,"
        " \"points\": [[1, 0], [-1, 0], [0, 1], [0, -1]],"
        " \"query\": {\"kind\": \"tukey2\", \"at\": [0, 0]}}";

    FdResult *result = NULL;
    FdStatus status = fd_query_json(instance, false, &result);
    if (status != FD_STATUS_OK) {
        char *message = fd_last_error_message();
        fprintf(stderr, "solve failed (%s): %s\n", fd_status_name(status),
                message ? message : "no detail");
        fd_string_free(message);
        return 1;
    }

    printf("distance %llu (strict %llu, incident %llu)\n",
           (unsigned long long)fd_result_distance(result),
           (unsigned long long)fd_result_strict_min(result),
           (unsigned long long)fd_result_incident_count(result));

    char *json = NULL;
    assert(fd_result_to_json(result, &json) == FD_STATUS_OK);
    assert(fd_verify_json(instance, json) == FD_STATUS_OK);
    puts("result verifies against the instance");

    fd_string_free(json);
    fd_result_free(result);
    printf("flatdepth %s\n", fd_version());
    return 0;
}
