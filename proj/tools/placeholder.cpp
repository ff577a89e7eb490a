namespace ssflab::cli { int placeholder_symbol = 0; }
