#include <doctest.h>
int acceptance_placeholder;
int main(){return 0;}
