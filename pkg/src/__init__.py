"""Линейная устойчивость гомографических движений задачи N тел."""
