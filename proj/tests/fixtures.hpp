#pragma once

// Golden fixture sources used across the test suites: a time-structure
// initializer, its decompiled form, and two model-style reconstructions.

inline const char* kTimeOriginal = R"(
struct rtc_time {
    int tm_year;
    int tm_mon;
    int tm_mday;
    int tm_hour;
    int tm_min;
    int tm_sec;
};

void real_time_2_tm(int year, int mon, int mday, int hour, int min, int sec, struct rtc_time *tm) {
 tm->tm_year = year - (1900);
 tm->tm_mon = mon;
 tm->tm_mday = mday;
 tm->tm_hour = hour;
 tm->tm_min = min;
 tm->tm_sec = sec;
}
)";

inline const char* kTimeDecompiled = R"(
_DWORD * func0(int a1, int a2, int a3, int a4, int a5, int a6, _DWORD *a7) {
    _DWORD *result; // rax

    a7[5] = a1 - 1900;
    a7[4] = a2;
    a7[3] = a3;
    a7[2] = a4;
    a7[1] = a5;
    result = a7;
    *a7 = a6;
    return result;
}
)";

// Correct-by-composition reconstruction: new names, same structure.
inline const char* kTimePrediction = R"(
void set_date(int year, int month, int day, int hour, int min, int sec, struct date_t *date) {
    date->year = year - 1900;
    date->month = month;
    date->day = day;
    date->hour = hour;
    date->min = min;
    date->sec = sec;
}

struct date_t {
    int year;
    int month;
    int day;
    int hour;
    int min;
    int sec;
};
)";

// Reconstruction in the decompiled shape: extra result variable and return.
inline const char* kTimePredictionExtraReturn = R"(
struct date_t {
    int year;
    int month;
    int day;
    int hour;
    int min;
    int sec;
};

struct date_t *set_date(int year, int month, int day, int hour, int min, int sec, struct date_t *date) {
    struct date_t *result;
    date->year = year - 1900;
    date->month = month;
    date->day = day;
    date->hour = hour;
    date->min = min;
    result = date;
    date->sec = sec;
    return result;
}
)";
