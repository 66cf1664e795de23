#include "toricdeg.h"

#include "tdeg/json_io.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct td_workbench {
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) return nullptr;
    std::memcpy(p, s.data(), s.size() + 1);
    return p;
}

} // namespace

extern "C" {

td_workbench* td_workbench_new(void) { return new (std::nothrow) td_workbench{}; }

void td_workbench_free(td_workbench* w) { delete w; }

const char* td_last_error(const td_workbench* w) {
    return w ? w->last_error.c_str() : "null workbench";
}

td_status td_run_json(td_workbench* w, const char* command, const char* input_json,
                      int canonical, char** report_out) {
    if (report_out) *report_out = nullptr;
    if (!w) return TD_EINTERNAL;
    w->last_error.clear();
    if (!command) {
        w->last_error = "command: null pointer";
        return TD_EINPUT;
    }
    try {
        tdeg::CommandResult r = tdeg::run_command_json(
            command, input_json ? std::string(input_json) : std::string(), canonical != 0);
        if (report_out) {
            *report_out = dup_string(r.report_json);
            if (!*report_out) {
                w->last_error = "out of memory";
                return TD_EINTERNAL;
            }
        }
        return r.verdict_ok ? TD_OK : TD_VERDICT;
    } catch (const tdeg::InputError& e) {
        w->last_error = e.what();
        return TD_EINPUT;
    } catch (const std::exception& e) {
        w->last_error = e.what();
        return TD_EINTERNAL;
    } catch (...) {
        w->last_error = "unknown internal failure";
        return TD_EINTERNAL;
    }
}

td_status td_run_csv(td_workbench* w, char** csv_out) {
    if (csv_out) *csv_out = nullptr;
    if (!w) return TD_EINTERNAL;
    w->last_error.clear();
    try {
        std::string csv = tdeg::run_k3_csv();
        if (csv_out) {
            *csv_out = dup_string(csv);
            if (!*csv_out) {
                w->last_error = "out of memory";
                return TD_EINTERNAL;
            }
        }
        return TD_OK;
    } catch (const std::exception& e) {
        w->last_error = e.what();
        return TD_EINTERNAL;
    } catch (...) {
        w->last_error = "unknown internal failure";
        return TD_EINTERNAL;
    }
}

const char* td_version(void) { return tdeg::tool_version(); }

void td_free_string(char* s) { std::free(s); }

} // extern "C"
